#include <gtest/gtest.h>

#include "vaultdrop/auth.hpp"

#include "support/test_util.hpp"

using namespace vaultdrop;

namespace {

struct AuthTest : ::testing::Test {
    testutil::TempDir dir;
    std::filesystem::path users_file() { return dir.path() / "users.tsv"; }
};

TEST_F(AuthTest, RegisterThenAuthenticate) {
    AuthStore store(users_file());
    store.register_user("alice", to_bytes("correct horse battery"));
    SessionToken token = store.authenticate("alice", to_bytes("correct horse battery"));
    EXPECT_EQ(token.username, "alice");
    EXPECT_EQ(token.token.size(), 64u); // 32 octets hex
    EXPECT_EQ(store.validate_token(token.token), "alice");
}

TEST_F(AuthTest, DuplicateUsernameRejected) {
    AuthStore store(users_file());
    store.register_user("alice", to_bytes("password123"));
    EXPECT_THROW(store.register_user("alice", to_bytes("other password")), UserExists);
}

TEST_F(AuthTest, WeakPasswordRejected) {
    AuthStore store(users_file());
    EXPECT_THROW(store.register_user("bob", to_bytes("short")), WeakPassword);
    EXPECT_THROW(store.register_user("bob", to_bytes("1234567")), WeakPassword);
    store.register_user("bob", to_bytes("12345678")); // exactly 8 is fine
}

TEST_F(AuthTest, MalformedUsernamesRejected) {
    AuthStore store(users_file());
    EXPECT_THROW(store.register_user("", to_bytes("password123")), InvalidParameter);
    EXPECT_THROW(store.register_user("has space", to_bytes("password123")),
                 InvalidParameter);
    EXPECT_THROW(store.register_user("tab\there", to_bytes("password123")),
                 InvalidParameter);
    EXPECT_THROW(store.register_user("slash/y", to_bytes("password123")),
                 InvalidParameter);
    EXPECT_THROW(store.register_user(std::string(65, 'a'), to_bytes("password123")),
                 InvalidParameter);
}

TEST_F(AuthTest, WrongPasswordAndUnknownUserAreIdentical) {
    AuthStore store(users_file());
    store.register_user("alice", to_bytes("password123"));

    std::string wrong_pw_msg, unknown_user_msg;
    try {
        store.authenticate("alice", to_bytes("wrong password"));
        FAIL() << "wrong password accepted";
    } catch (const AuthenticationError& e) {
        wrong_pw_msg = e.what();
    }
    try {
        store.authenticate("nobody", to_bytes("wrong password"));
        FAIL() << "unknown user accepted";
    } catch (const AuthenticationError& e) {
        unknown_user_msg = e.what();
    }
    EXPECT_EQ(wrong_pw_msg, unknown_user_msg); // no username-existence oracle
}

TEST_F(AuthTest, PasswordHashIsSaltedPbkdf2) {
    AuthStore store(users_file());
    UserRecord rec = store.register_user("alice", to_bytes("password123"));
    Bytes expected = pbkdf2_hmac_sha256(to_bytes("password123"), rec.salt,
                                        rec.iterations, 32);
    EXPECT_TRUE(std::equal(expected.begin(), expected.end(),
                           rec.password_hash.begin()));
}

TEST_F(AuthTest, NoPlaintextPasswordInStore) {
    {
        AuthStore store(users_file());
        store.register_user("alice", to_bytes("hunter2hunter2"));
    }
    auto data = try_read_file(users_file());
    ASSERT_TRUE(data.has_value());
    std::string contents = to_string(*data);
    EXPECT_EQ(contents.find("hunter2hunter2"), std::string::npos);
}

TEST_F(AuthTest, PersistsAcrossReload) {
    {
        AuthStore store(users_file());
        store.register_user("alice", to_bytes("password123"));
        store.register_user("bob", to_bytes("password456"));
    }
    AuthStore reloaded(users_file());
    EXPECT_EQ(reloaded.user_count(), 2u);
    EXPECT_NO_THROW(reloaded.authenticate("alice", to_bytes("password123")));
    EXPECT_NO_THROW(reloaded.authenticate("bob", to_bytes("password456")));
    EXPECT_THROW(reloaded.authenticate("alice", to_bytes("password456")),
                 AuthenticationError);
}

TEST_F(AuthTest, TokenLifecycle) {
    AuthStore store(users_file());
    store.register_user("alice", to_bytes("password123"));
    SessionToken token = store.authenticate("alice", to_bytes("password123"));

    EXPECT_EQ(store.validate_token(token.token), "alice");
    store.revoke(token.token);
    EXPECT_THROW(store.validate_token(token.token), TokenInvalid);

    // Revoke is idempotent, including for tokens that never existed.
    EXPECT_NO_THROW(store.revoke(token.token));
    EXPECT_NO_THROW(store.revoke("deadbeef"));
    EXPECT_THROW(store.validate_token("deadbeef"), TokenInvalid);
}

TEST_F(AuthTest, ExpiredTokenInvalid) {
    AuthStore store(users_file(), AuthStore::Options{1000, 0}); // ttl 0s
    store.register_user("alice", to_bytes("password123"));
    SessionToken token = store.authenticate("alice", to_bytes("password123"));
    EXPECT_THROW(store.validate_token(token.token), TokenInvalid);
}

TEST_F(AuthTest, RandomCredentialPairsRoundTrip) {
    AuthStore store(users_file(), AuthStore::Options{1000, 3600});
    for (int i = 0; i < 100; ++i) {
        std::string username = testutil::random_name(1 + i % 20) + std::to_string(i);
        Bytes password = to_bytes(testutil::random_name(8 + i % 24));
        store.register_user(username, password);
        SessionToken token = store.authenticate(username, password);
        ASSERT_EQ(store.validate_token(token.token), username);
    }
}

} // namespace
