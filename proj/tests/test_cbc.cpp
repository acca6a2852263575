#include <gtest/gtest.h>

#include "vaultdrop/cbc.hpp"

#include "support/test_util.hpp"

using namespace vaultdrop;

namespace {

const AesKey kVectorKey{hex_decode("2b7e151628aed2a6abf7158809cf4f3c")};
const Bytes kVectorIv = hex_decode("000102030405060708090a0b0c0d0e0f");

// NIST SP 800-38A F.2.1 (CBC-AES128.Encrypt), four blocks. The vector is
// block-aligned and unpadded, so only the first 64 ciphertext octets are
// compared; the final block of our output is the encrypted padding.
TEST(CbcEncrypt, Sp80038aF21Vector) {
    Bytes pt = hex_decode(
        "6bc1bee22e409f96e93d7e117393172a"
        "ae2d8a571e03ac9c9eb76fac45af8e51"
        "30c81c46a35ce411e5fbc1191a0a52ef"
        "f69f2445df4f9b17ad2b417be66c3710");
    Bytes expected = hex_decode(
        "7649abac8119b246cee98e9b12e9197d"
        "5086cb9b507219ee95db113a917678b2"
        "73bed6b8e3c1743b7116e69e22229516"
        "3ff1caa1681fac09120eca307586e1a7");

    Bytes ct = cbc_encrypt(kVectorKey, kVectorIv, pt);
    ASSERT_EQ(ct.size(), 80u);
    EXPECT_TRUE(std::equal(expected.begin(), expected.end(), ct.begin()));
}

TEST(CbcDecrypt, Sp80038aF21VectorInverse) {
    Bytes pt = hex_decode(
        "6bc1bee22e409f96e93d7e117393172a"
        "ae2d8a571e03ac9c9eb76fac45af8e51"
        "30c81c46a35ce411e5fbc1191a0a52ef"
        "f69f2445df4f9b17ad2b417be66c3710");
    EXPECT_EQ(cbc_decrypt(kVectorKey, kVectorIv, cbc_encrypt(kVectorKey, kVectorIv, pt)),
              pt);
}

TEST(CbcEncrypt, EmptyPlaintextIsOnePaddingBlock) {
    Bytes ct = cbc_encrypt(kVectorKey, kVectorIv, {});
    ASSERT_EQ(ct.size(), 16u);

    // The single block is sixteen 0x10 bytes XORed with the IV, encrypted.
    auto schedule = key_expansion(kVectorKey);
    Block input;
    for (int i = 0; i < 16; ++i) input[i] = 0x10 ^ kVectorIv[i];
    Block expected = encrypt_block(schedule, input);
    EXPECT_TRUE(std::equal(expected.begin(), expected.end(), ct.begin()));
}

TEST(CbcEncrypt, OutputLengthFormula) {
    AesKey key(testutil::random_bytes(32));
    Bytes iv = testutil::random_bytes(16);
    for (std::size_t n : {0u, 1u, 15u, 16u, 17u, 31u, 32u, 33u, 255u, 256u}) {
        Bytes pt = testutil::random_bytes(n);
        EXPECT_EQ(cbc_encrypt(key, iv, pt).size(), 16 * (n / 16) + 16) << "n=" << n;
    }
}

TEST(CbcRoundTrip, AllLengthsUpTo1000) {
    AesKey key(testutil::random_bytes(32));
    Bytes iv = testutil::random_bytes(16);
    for (std::size_t n = 0; n <= 1000; ++n) {
        Bytes pt = testutil::random_bytes(n);
        ASSERT_EQ(cbc_decrypt(key, iv, cbc_encrypt(key, iv, pt)), pt) << "n=" << n;
    }
}

TEST(CbcDecrypt, RejectsZeroPaddingByte) {
    // Build a ciphertext by hand whose decrypted final byte is 0x00;
    // PKCS#7 never produces that value.
    AesKey key(testutil::random_bytes(16));
    auto schedule = key_expansion(key);
    Bytes iv = testutil::random_bytes(16);

    Block final_plain;
    final_plain.fill(0xab);
    final_plain.back() = 0x00;
    Block input;
    for (int i = 0; i < 16; ++i) input[i] = final_plain[i] ^ iv[i];
    Block ct_block = encrypt_block(schedule, input);

    EXPECT_THROW(cbc_decrypt(key, iv, ct_block), PaddingError);
}

TEST(CbcDecrypt, RejectsInconsistentPadding) {
    // Final block claims 3 bytes of padding but only the last byte is 0x03.
    AesKey key(testutil::random_bytes(16));
    auto schedule = key_expansion(key);
    Bytes iv = testutil::random_bytes(16);

    Block final_plain;
    final_plain.fill(0x07);
    final_plain.back() = 0x03;
    Block input;
    for (int i = 0; i < 16; ++i) input[i] = final_plain[i] ^ iv[i];
    Block ct_block = encrypt_block(schedule, input);

    EXPECT_THROW(cbc_decrypt(key, iv, ct_block), PaddingError);
}

TEST(CbcDecrypt, RejectsPaddingByteAbove16) {
    AesKey key(testutil::random_bytes(16));
    auto schedule = key_expansion(key);
    Bytes iv = testutil::random_bytes(16);

    Block final_plain;
    final_plain.fill(0x20);
    Block input;
    for (int i = 0; i < 16; ++i) input[i] = final_plain[i] ^ iv[i];
    Block ct_block = encrypt_block(schedule, input);

    EXPECT_THROW(cbc_decrypt(key, iv, ct_block), PaddingError);
}

TEST(CbcDecrypt, RejectsBadCiphertextLengths) {
    AesKey key(testutil::random_bytes(16));
    Bytes iv = testutil::random_bytes(16);
    EXPECT_THROW(cbc_decrypt(key, iv, Bytes{}), InvalidCiphertextLength);
    EXPECT_THROW(cbc_decrypt(key, iv, testutil::random_bytes(15)), InvalidCiphertextLength);
    EXPECT_THROW(cbc_decrypt(key, iv, testutil::random_bytes(17)), InvalidCiphertextLength);
}

TEST(Cbc, RejectsBadIvLength) {
    AesKey key(testutil::random_bytes(16));
    EXPECT_THROW(cbc_encrypt(key, testutil::random_bytes(15), Bytes{}), InvalidIvLength);
    EXPECT_THROW(cbc_decrypt(key, testutil::random_bytes(17), testutil::random_bytes(16)),
                 InvalidIvLength);
}

} // namespace
