#pragma once

// User registration and login. Passwords are stored only as salted
// PBKDF2-HMAC-SHA256 hashes; a successful login yields an opaque session
// token that every remote operation must present.
//
// Credential file: one record per line,
//   username \t hex(salt) \t iterations \t hex(hash) \t created_at
// rewritten atomically on every change. Tokens are process-local.

#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>

#include "vaultdrop/bytes.hpp"
#include "vaultdrop/clock.hpp"
#include "vaultdrop/fsutil.hpp"
#include "vaultdrop/pbkdf2.hpp"
#include "vaultdrop/random.hpp"

namespace vaultdrop {

inline constexpr std::uint32_t kLoginHashIterations = 10000;
inline constexpr std::size_t kMinPasswordLength = 8;
inline constexpr std::size_t kMaxUsernameLength = 64;
inline constexpr std::uint32_t kDefaultTokenTtlSeconds = 24 * 60 * 60;

// Both unknown-user and wrong-password must produce this exact payload:
// a distinguishable message would be a username-existence oracle.
inline constexpr const char* kAuthErrorMessage = "authentication error";

struct UserRecord {
    std::string username;
    std::array<std::uint8_t, 16> salt{};
    std::uint32_t iterations = kLoginHashIterations;
    std::array<std::uint8_t, 32> password_hash{};
    std::string created_at;
};

struct SessionToken {
    std::string token; // 32 random octets, hex
    std::string username;
    TimePoint expires_at;
};

inline bool username_well_formed(const std::string& username) {
    if (username.empty() || username.size() > kMaxUsernameLength) return false;
    for (unsigned char c : username) {
        if (c < 0x21) return false; // control chars, space, tab, newline
        if (c == 0x7f || c == '/' || c == '\\') return false;
    }
    return true;
}

struct AuthStoreOptions {
    std::uint32_t password_iterations = kLoginHashIterations;
    std::uint32_t token_ttl_seconds = kDefaultTokenTtlSeconds;
};

class AuthStore {
public:
    using Options = AuthStoreOptions;

    explicit AuthStore(std::filesystem::path users_file,
                       Options options = Options())
        : users_file_(std::move(users_file)), options_(options) {
        load();
    }

    UserRecord register_user(const std::string& username, ByteView password) {
        if (!username_well_formed(username))
            throw InvalidParameter("username must be 1-64 printable characters");
        if (password.size() < kMinPasswordLength)
            throw WeakPassword("password must be at least 8 characters");

        std::lock_guard lock(users_mutex_);
        if (users_.count(username) > 0)
            throw UserExists("username already registered: " + username);

        UserRecord rec;
        rec.username = username;
        Bytes salt = random_bytes(16);
        std::copy(salt.begin(), salt.end(), rec.salt.begin());
        rec.iterations = options_.password_iterations;
        Bytes hash = pbkdf2_hmac_sha256(password, rec.salt, rec.iterations, 32);
        std::copy(hash.begin(), hash.end(), rec.password_hash.begin());
        rec.created_at = now_utc();

        users_.emplace(username, rec);
        persist();
        return rec;
    }

    SessionToken authenticate(const std::string& username, ByteView password) {
        std::optional<UserRecord> rec;
        {
            std::lock_guard lock(users_mutex_);
            auto it = users_.find(username);
            if (it != users_.end()) rec = it->second;
        }

        bool ok = false;
        if (rec) {
            Bytes hash = pbkdf2_hmac_sha256(password, rec->salt, rec->iterations, 32);
            ok = constant_time_equal(hash, rec->password_hash);
        } else {
            // Burn the same KDF work for unknown users so response time
            // does not reveal whether the username exists.
            static const std::array<std::uint8_t, 16> dummy_salt{};
            pbkdf2_hmac_sha256(password, dummy_salt,
                               options_.password_iterations, 32);
        }
        if (!ok) throw AuthenticationError(kAuthErrorMessage);

        SessionToken token;
        token.token = hex_encode(random_bytes(32));
        token.username = username;
        token.expires_at = std::chrono::system_clock::now() +
                           std::chrono::seconds(options_.token_ttl_seconds);
        {
            std::lock_guard lock(tokens_mutex_);
            tokens_[token.token] = token;
        }
        return token;
    }

    std::string validate_token(const std::string& token) {
        std::lock_guard lock(tokens_mutex_);
        auto it = tokens_.find(token);
        if (it == tokens_.end())
            throw TokenInvalid("unknown session token");
        if (std::chrono::system_clock::now() >= it->second.expires_at) {
            tokens_.erase(it);
            throw TokenInvalid("session token expired");
        }
        return it->second.username;
    }

    /// Idempotent: revoking an unknown or already-revoked token succeeds.
    void revoke(const std::string& token) {
        std::lock_guard lock(tokens_mutex_);
        tokens_.erase(token);
    }

    bool has_user(const std::string& username) const {
        std::lock_guard lock(users_mutex_);
        return users_.count(username) > 0;
    }

    std::size_t user_count() const {
        std::lock_guard lock(users_mutex_);
        return users_.size();
    }

private:
    void load() {
        auto data = try_read_file(users_file_);
        if (!data) return; // first run
        std::istringstream in(to_string(*data));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream fields(line);
            std::string username, salt_hex, iter_str, hash_hex, created;
            if (!std::getline(fields, username, '\t') ||
                !std::getline(fields, salt_hex, '\t') ||
                !std::getline(fields, iter_str, '\t') ||
                !std::getline(fields, hash_hex, '\t') ||
                !std::getline(fields, created))
                throw StorageFailure("corrupt credential record: " + line);
            UserRecord rec;
            rec.username = username;
            Bytes salt = hex_decode(salt_hex);
            Bytes hash = hex_decode(hash_hex);
            if (salt.size() != 16 || hash.size() != 32)
                throw StorageFailure("corrupt credential record: " + username);
            std::copy(salt.begin(), salt.end(), rec.salt.begin());
            std::copy(hash.begin(), hash.end(), rec.password_hash.begin());
            rec.iterations = static_cast<std::uint32_t>(std::stoul(iter_str));
            rec.created_at = created;
            users_.emplace(rec.username, rec);
        }
    }

    void persist() {
        std::string out;
        for (const auto& [name, rec] : users_) {
            out += name;
            out += '\t';
            out += hex_encode(rec.salt);
            out += '\t';
            out += std::to_string(rec.iterations);
            out += '\t';
            out += hex_encode(rec.password_hash);
            out += '\t';
            out += rec.created_at;
            out += '\n';
        }
        if (!write_file_atomic(users_file_, to_bytes(out)))
            throw StorageFailure("cannot write credential store: " +
                                 users_file_.string());
    }

    std::filesystem::path users_file_;
    Options options_;
    std::map<std::string, UserRecord> users_;
    std::unordered_map<std::string, SessionToken> tokens_;
    mutable std::mutex users_mutex_;
    std::mutex tokens_mutex_;
};

} // namespace vaultdrop
