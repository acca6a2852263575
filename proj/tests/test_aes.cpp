#include <gtest/gtest.h>

#include "vaultdrop/aes.hpp"

#include "support/ref_crypto.hpp"
#include "support/test_util.hpp"

using namespace vaultdrop;

namespace {

Block block_from_hex(std::string_view hex) {
    Bytes b = hex_decode(hex);
    Block out{};
    std::copy(b.begin(), b.end(), out.begin());
    return out;
}

TEST(KeyExpansion, WordCountPerKeySize) {
    EXPECT_EQ(key_expansion(AesKey(testutil::random_bytes(16))).words().size(), 44u);
    EXPECT_EQ(key_expansion(AesKey(testutil::random_bytes(24))).words().size(), 52u);
    EXPECT_EQ(key_expansion(AesKey(testutil::random_bytes(32))).words().size(), 60u);
}

// FIPS-197 Appendix A.1 worked expansion for the 128-bit example key.
TEST(KeyExpansion, Fips197AppendixA1) {
    auto schedule = key_expansion(AesKey(hex_decode("2b7e151628aed2a6abf7158809cf4f3c")));
    EXPECT_EQ(schedule.words()[4], 0xa0fafe17u);
    EXPECT_EQ(schedule.words()[5], 0x88542cb1u);
    EXPECT_EQ(schedule.words()[43], 0xb6630ca6u);
}

TEST(KeyExpansion, AllZero256KeyMatchesOracle) {
    Bytes key(32, 0x00);
    auto schedule = key_expansion(AesKey(key));
    auto expected = refcrypto::RefAes(key).schedule_words();
    EXPECT_EQ(schedule.words(), expected);
}

TEST(KeyExpansion, RandomKeysMatchOracle) {
    for (std::size_t len : {16u, 24u, 32u}) {
        Bytes key = testutil::random_bytes(len);
        EXPECT_EQ(key_expansion(AesKey(key)).words(),
                  refcrypto::RefAes(key).schedule_words());
    }
}

TEST(AesKeyType, RejectsBadLengths) {
    for (std::size_t len : {0u, 1u, 15u, 17u, 23u, 25u, 31u, 33u, 64u}) {
        EXPECT_THROW(AesKey(testutil::random_bytes(len)), InvalidKeyLength)
            << "length " << len;
    }
}

// FIPS-197 Appendix C known-answer vectors, common plaintext
// 00112233445566778899aabbccddeeff.

TEST(BlockCipher, Fips197C1Aes128) {
    auto schedule = key_expansion(AesKey(hex_decode("000102030405060708090a0b0c0d0e0f")));
    Block pt = block_from_hex("00112233445566778899aabbccddeeff");
    Block ct = encrypt_block(schedule, pt);
    EXPECT_EQ(hex_encode(ct), "69c4e0d86a7b0430d8cdb78070b4c55a");
    EXPECT_EQ(decrypt_block(schedule, ct), pt);
}

TEST(BlockCipher, Fips197C2Aes192) {
    auto schedule = key_expansion(
        AesKey(hex_decode("000102030405060708090a0b0c0d0e0f1011121314151617")));
    Block pt = block_from_hex("00112233445566778899aabbccddeeff");
    Block ct = encrypt_block(schedule, pt);
    EXPECT_EQ(hex_encode(ct), "dda97ca4864cdfe06eaf70a0ec0d7191");
    EXPECT_EQ(decrypt_block(schedule, ct), pt);
}

TEST(BlockCipher, Fips197C3Aes256) {
    auto schedule = key_expansion(AesKey(
        hex_decode("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f")));
    Block pt = block_from_hex("00112233445566778899aabbccddeeff");
    Block ct = encrypt_block(schedule, pt);
    EXPECT_EQ(hex_encode(ct), "8ea2b7ca516745bfeafc49904b496089");
    EXPECT_EQ(decrypt_block(schedule, ct), pt);
}

TEST(BlockCipher, DecryptInvertsEncryptAllKeySizes) {
    for (std::size_t len : {16u, 24u, 32u}) {
        auto schedule = key_expansion(AesKey(testutil::random_bytes(len)));
        for (int i = 0; i < 1000; ++i) {
            Bytes pt = testutil::random_bytes(16);
            Block ct = encrypt_block(schedule, pt);
            Block back = decrypt_block(schedule, ct);
            ASSERT_TRUE(std::equal(pt.begin(), pt.end(), back.begin()));
        }
    }
}

TEST(BlockCipher, EncryptInvertsDecrypt) {
    auto schedule = key_expansion(AesKey(testutil::random_bytes(32)));
    for (int i = 0; i < 100; ++i) {
        Bytes ct = testutil::random_bytes(16);
        Block pt = decrypt_block(schedule, ct);
        Block back = encrypt_block(schedule, pt);
        ASSERT_TRUE(std::equal(ct.begin(), ct.end(), back.begin()));
    }
}

TEST(BlockCipher, MatchesIndependentOracle) {
    for (std::size_t len : {16u, 24u, 32u}) {
        Bytes key = testutil::random_bytes(len);
        auto schedule = key_expansion(AesKey(key));
        refcrypto::RefAes oracle(key);
        for (int i = 0; i < 50; ++i) {
            Bytes raw = testutil::random_bytes(16);
            Block blk;
            std::copy(raw.begin(), raw.end(), blk.begin());
            ASSERT_EQ(encrypt_block(schedule, blk), oracle.encrypt(blk));
            ASSERT_EQ(decrypt_block(schedule, blk), oracle.decrypt(blk));
        }
    }
}

TEST(BlockCipher, RejectsBadBlockLengths) {
    auto schedule = key_expansion(AesKey(testutil::random_bytes(16)));
    EXPECT_THROW(encrypt_block(schedule, testutil::random_bytes(15)), InvalidBlockLength);
    EXPECT_THROW(encrypt_block(schedule, testutil::random_bytes(17)), InvalidBlockLength);
    EXPECT_THROW(decrypt_block(schedule, testutil::random_bytes(0)), InvalidBlockLength);
}

// The oracle itself must reproduce the published vectors, or it is no
// oracle at all.
TEST(ReferenceOracle, SelfCheckAgainstFips197) {
    refcrypto::RefAes aes128(hex_decode("000102030405060708090a0b0c0d0e0f"));
    EXPECT_EQ(hex_encode(aes128.encrypt(block_from_hex("00112233445566778899aabbccddeeff"))),
              "69c4e0d86a7b0430d8cdb78070b4c55a");
    refcrypto::RefAes aes256(
        hex_decode("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f"));
    EXPECT_EQ(hex_encode(aes256.encrypt(block_from_hex("00112233445566778899aabbccddeeff"))),
              "8ea2b7ca516745bfeafc49904b496089");
}

} // namespace
