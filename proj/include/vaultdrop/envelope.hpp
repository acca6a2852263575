#pragma once

// The encrypted file container (".esf"). Layout, all integers big-endian:
//
//   offset  size  field
//        0     4  magic "ESF1"
//        4     1  version (0x01)
//        5     1  kdf_id  (0x01 = PBKDF2-HMAC-SHA256)
//        6     4  iterations
//       10    16  salt
//       26    16  iv
//       42    16  verifier (password check tag, KDF-derived)
//       58     8  ciphertext_len
//       66     -  ciphertext (AES-256-CBC, PKCS#7)
//        -    32  mac (HMAC-SHA256 over header || ciphertext)
//
// One 80-octet PBKDF2 output is split into the AES key, the MAC key and
// the verifier, so a fresh random salt gives every file its own keys.
// The verifier lets a wrong password be rejected before any decryption;
// the MAC covers the header too, so KDF parameters and IV cannot be
// altered undetected.

#include <cstdint>

#include "vaultdrop/bytes.hpp"
#include "vaultdrop/cbc.hpp"
#include "vaultdrop/hmac.hpp"
#include "vaultdrop/pbkdf2.hpp"

namespace vaultdrop {

inline constexpr char kEnvelopeMagic[4] = {'E', 'S', 'F', '1'};
inline constexpr std::uint8_t kEnvelopeVersion = 0x01;
inline constexpr std::uint8_t kKdfPbkdf2HmacSha256 = 0x01;
inline constexpr std::size_t kEnvelopeHeaderSize = 66;
inline constexpr std::size_t kEnvelopeMacSize = 32;
inline constexpr std::size_t kSaltSize = 16;
inline constexpr std::size_t kIvSize = 16;
inline constexpr std::size_t kVerifierSize = 16;

// KDF work-factor bounds enforced on both seal and decode. The floor
// keeps stretching meaningful; the ceiling stops a tampered header from
// demanding an absurd amount of work before it can be rejected.
inline constexpr std::uint32_t kMinIterations = 1000;
inline constexpr std::uint32_t kMaxIterations = 1000000;
inline constexpr std::uint32_t kDefaultIterations = 100000;

/// Password-derived secret bundle: disjoint slices of one 80-octet
/// PBKDF2 output. Only the verifier is ever written anywhere.
struct KeyMaterial {
    std::array<std::uint8_t, 32> enc_key;
    std::array<std::uint8_t, 32> mac_key;
    std::array<std::uint8_t, 16> verifier;

    ~KeyMaterial() {
        secure_wipe(enc_key.data(), enc_key.size());
        secure_wipe(mac_key.data(), mac_key.size());
        secure_wipe(verifier.data(), verifier.size());
    }
    KeyMaterial() = default;
    KeyMaterial(const KeyMaterial&) = default;
    KeyMaterial& operator=(const KeyMaterial&) = default;
};

struct EnvelopeHeader {
    std::uint32_t iterations = kDefaultIterations;
    std::array<std::uint8_t, kSaltSize> salt{};
    std::array<std::uint8_t, kIvSize> iv{};
    std::array<std::uint8_t, kVerifierSize> verifier{};
    std::uint64_t ciphertext_len = 0;

    Bytes encode() const {
        Bytes out;
        out.reserve(kEnvelopeHeaderSize);
        out.insert(out.end(), kEnvelopeMagic, kEnvelopeMagic + 4);
        out.push_back(kEnvelopeVersion);
        out.push_back(kKdfPbkdf2HmacSha256);
        for (int i = 3; i >= 0; --i)
            out.push_back(static_cast<std::uint8_t>(iterations >> (8 * i)));
        out.insert(out.end(), salt.begin(), salt.end());
        out.insert(out.end(), iv.begin(), iv.end());
        out.insert(out.end(), verifier.begin(), verifier.end());
        for (int i = 7; i >= 0; --i)
            out.push_back(static_cast<std::uint8_t>(ciphertext_len >> (8 * i)));
        return out;
    }

    bool operator==(const EnvelopeHeader&) const = default;
};

struct Envelope {
    EnvelopeHeader header;
    Bytes ciphertext;
    std::array<std::uint8_t, kEnvelopeMacSize> mac{};

    bool operator==(const Envelope&) const = default;
};

inline KeyMaterial derive_key_material(ByteView password, ByteView salt,
                                       std::uint32_t iterations) {
    if (password.empty())
        throw InvalidParameter("encryption password must not be empty");
    if (salt.size() != kSaltSize)
        throw InvalidParameter("salt must be exactly 16 bytes");
    if (iterations < kMinIterations || iterations > kMaxIterations)
        throw InvalidParameter("iteration count out of range [1000, 1000000]");

    Bytes derived = pbkdf2_hmac_sha256(password, salt, iterations, 80);
    KeyMaterial km;
    std::copy(derived.begin(), derived.begin() + 32, km.enc_key.begin());
    std::copy(derived.begin() + 32, derived.begin() + 64, km.mac_key.begin());
    std::copy(derived.begin() + 64, derived.end(), km.verifier.begin());
    secure_wipe(derived.data(), derived.size());
    return km;
}

/// Encrypt plaintext into a self-contained envelope. Deterministic in all
/// five arguments; callers wanting per-file keys pass random_bytes(16)
/// for salt and iv.
inline Envelope seal(ByteView plaintext, ByteView password,
                     std::uint32_t iterations, ByteView salt, ByteView iv) {
    if (iv.size() != kIvSize)
        throw InvalidParameter("iv must be exactly 16 bytes");
    KeyMaterial km = derive_key_material(password, salt, iterations);

    Envelope env;
    env.header.iterations = iterations;
    std::copy(salt.begin(), salt.end(), env.header.salt.begin());
    std::copy(iv.begin(), iv.end(), env.header.iv.begin());
    env.header.verifier = km.verifier;

    env.ciphertext = cbc_encrypt(AesKey(km.enc_key), iv, plaintext);
    env.header.ciphertext_len = env.ciphertext.size();

    Bytes authed = env.header.encode();
    authed.insert(authed.end(), env.ciphertext.begin(), env.ciphertext.end());
    env.mac = hmac_sha256(km.mac_key, authed);
    return env;
}

/// True iff the password derives the verifier stored in the header.
/// Performs no decryption and no MAC check.
inline bool verify_password(const Envelope& envelope, ByteView password) {
    KeyMaterial km = derive_key_material(password, envelope.header.salt,
                                         envelope.header.iterations);
    return constant_time_equal(km.verifier, envelope.header.verifier);
}

/// Recover the plaintext. Checks, in order: password verifier
/// (PasswordInvalid), MAC over header and ciphertext (IntegrityError),
/// then decrypts; a padding failure at that point also means tampering
/// and surfaces as IntegrityError.
inline Bytes open(const Envelope& envelope, ByteView password) {
    KeyMaterial km = derive_key_material(password, envelope.header.salt,
                                         envelope.header.iterations);
    if (!constant_time_equal(km.verifier, envelope.header.verifier))
        throw PasswordInvalid("password rejected: verifier mismatch");

    Bytes authed = envelope.header.encode();
    authed.insert(authed.end(), envelope.ciphertext.begin(),
                  envelope.ciphertext.end());
    Digest256 expected = hmac_sha256(km.mac_key, authed);
    if (!constant_time_equal(expected, envelope.mac))
        throw IntegrityError("envelope MAC mismatch: content was modified");

    try {
        return cbc_decrypt(AesKey(km.enc_key), envelope.header.iv,
                           envelope.ciphertext);
    } catch (const PaddingError&) {
        throw IntegrityError("envelope padding invalid after MAC pass");
    }
}

/// Bit-exact serialization: header || ciphertext || mac.
inline Bytes encode(const Envelope& envelope) {
    Bytes out = envelope.header.encode();
    out.insert(out.end(), envelope.ciphertext.begin(),
               envelope.ciphertext.end());
    out.insert(out.end(), envelope.mac.begin(), envelope.mac.end());
    return out;
}

inline Envelope decode(ByteView bytes) {
    if (bytes.size() < kEnvelopeHeaderSize + kEnvelopeMacSize)
        throw FormatError("envelope truncated");
    if (!std::equal(kEnvelopeMagic, kEnvelopeMagic + 4, bytes.begin()))
        throw FormatError("bad envelope magic");
    if (bytes[4] != kEnvelopeVersion)
        throw FormatError("unsupported envelope version");
    if (bytes[5] != kKdfPbkdf2HmacSha256)
        throw FormatError("unknown KDF identifier");

    Envelope env;
    env.header.iterations = (static_cast<std::uint32_t>(bytes[6]) << 24) |
                            (static_cast<std::uint32_t>(bytes[7]) << 16) |
                            (static_cast<std::uint32_t>(bytes[8]) << 8) |
                            static_cast<std::uint32_t>(bytes[9]);
    if (env.header.iterations < kMinIterations ||
        env.header.iterations > kMaxIterations)
        throw FormatError("iteration count out of range");

    auto at = bytes.begin() + 10;
    std::copy(at, at + kSaltSize, env.header.salt.begin());
    at += kSaltSize;
    std::copy(at, at + kIvSize, env.header.iv.begin());
    at += kIvSize;
    std::copy(at, at + kVerifierSize, env.header.verifier.begin());
    at += kVerifierSize;

    std::uint64_t ct_len = 0;
    for (int i = 0; i < 8; ++i)
        ct_len = (ct_len << 8) | *(at + i);
    env.header.ciphertext_len = ct_len;

    if (ct_len == 0 || ct_len % 16 != 0)
        throw FormatError("ciphertext length must be a positive multiple of 16");
    const std::uint64_t payload =
        bytes.size() - kEnvelopeHeaderSize - kEnvelopeMacSize;
    if (ct_len != payload)
        throw FormatError("ciphertext length inconsistent with input size");

    env.ciphertext.assign(bytes.begin() + kEnvelopeHeaderSize,
                          bytes.begin() + kEnvelopeHeaderSize + ct_len);
    std::copy(bytes.end() - kEnvelopeMacSize, bytes.end(), env.mac.begin());
    return env;
}

} // namespace vaultdrop
