#pragma once

// AES block cipher (FIPS-197): key expansion, cipher and the
// straightforward inverse cipher (InvShiftRows / InvSubBytes /
// InvMixColumns in spec order, not the equivalent-inverse variant).
// State is held column-major in 16 bytes: state[r + 4c] = byte (r, c).

#include <array>
#include <cstdint>
#include <vector>

#include "vaultdrop/bytes.hpp"

namespace vaultdrop {

using Block = std::array<std::uint8_t, 16>;

namespace aes_detail {

inline constexpr std::uint8_t kSbox[256] = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b,
    0xfe, 0xd7, 0xab, 0x76, 0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0,
    0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0, 0xb7, 0xfd, 0x93, 0x26,
    0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2,
    0xeb, 0x27, 0xb2, 0x75, 0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0,
    0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84, 0x53, 0xd1, 0x00, 0xed,
    0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f,
    0x50, 0x3c, 0x9f, 0xa8, 0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5,
    0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2, 0xcd, 0x0c, 0x13, 0xec,
    0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14,
    0xde, 0x5e, 0x0b, 0xdb, 0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c,
    0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79, 0xe7, 0xc8, 0x37, 0x6d,
    0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f,
    0x4b, 0xbd, 0x8b, 0x8a, 0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e,
    0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e, 0xe1, 0xf8, 0x98, 0x11,
    0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f,
    0xb0, 0x54, 0xbb, 0x16};

inline constexpr std::array<std::uint8_t, 256> make_inv_sbox() {
    std::array<std::uint8_t, 256> inv{};
    for (int i = 0; i < 256; ++i) inv[kSbox[i]] = static_cast<std::uint8_t>(i);
    return inv;
}

inline constexpr auto kInvSbox = make_inv_sbox();

// Multiplication in GF(2^8) modulo x^8 + x^4 + x^3 + x + 1.
inline constexpr std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t p = 0;
    for (int i = 0; i < 8; ++i) {
        if (b & 1) p ^= a;
        bool hi = (a & 0x80) != 0;
        a = static_cast<std::uint8_t>(a << 1);
        if (hi) a ^= 0x1b;
        b >>= 1;
    }
    return p;
}

inline constexpr std::array<std::uint8_t, 256> make_mul_table(std::uint8_t c) {
    std::array<std::uint8_t, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = gf_mul(static_cast<std::uint8_t>(i), c);
    return t;
}

inline constexpr auto kMul2 = make_mul_table(0x02);
inline constexpr auto kMul3 = make_mul_table(0x03);
inline constexpr auto kMul9 = make_mul_table(0x09);
inline constexpr auto kMulB = make_mul_table(0x0b);
inline constexpr auto kMulD = make_mul_table(0x0d);
inline constexpr auto kMulE = make_mul_table(0x0e);

inline constexpr std::uint8_t kRcon[11] = {0x00, 0x01, 0x02, 0x04, 0x08, 0x10,
                                           0x20, 0x40, 0x80, 0x1b, 0x36};

} // namespace aes_detail

/// AES key of 16, 24 or 32 octets (128/192/256-bit).
class AesKey {
public:
    explicit AesKey(ByteView bytes) : bytes_(bytes.begin(), bytes.end()) {
        if (bytes_.size() != 16 && bytes_.size() != 24 && bytes_.size() != 32)
            throw InvalidKeyLength("AES key must be 16, 24 or 32 bytes, got " +
                                   std::to_string(bytes_.size()));
    }

    ~AesKey() { secure_wipe(bytes_.data(), bytes_.size()); }
    AesKey(const AesKey&) = default;
    AesKey(AesKey&&) = default;
    AesKey& operator=(const AesKey&) = default;
    AesKey& operator=(AesKey&&) = default;

    const Bytes& bytes() const { return bytes_; }

    /// Nr: 10, 12 or 14 rounds depending on key size.
    int rounds() const { return static_cast<int>(bytes_.size() / 4) + 6; }

private:
    Bytes bytes_;
};

/// Expanded key: 4*(Nr+1) 32-bit words (44/52/60).
class RoundKeySchedule {
public:
    RoundKeySchedule(std::vector<std::uint32_t> words, int rounds)
        : words_(std::move(words)), rounds_(rounds) {}

    ~RoundKeySchedule() {
        secure_wipe(words_.data(), words_.size() * sizeof(std::uint32_t));
    }
    RoundKeySchedule(const RoundKeySchedule&) = default;
    RoundKeySchedule(RoundKeySchedule&&) = default;
    RoundKeySchedule& operator=(const RoundKeySchedule&) = default;
    RoundKeySchedule& operator=(RoundKeySchedule&&) = default;

    const std::vector<std::uint32_t>& words() const { return words_; }
    int rounds() const { return rounds_; }

private:
    std::vector<std::uint32_t> words_;
    int rounds_;
};

/// FIPS-197 section 5.2 key expansion.
inline RoundKeySchedule key_expansion(const AesKey& key) {
    using namespace aes_detail;

    const int nk = static_cast<int>(key.bytes().size() / 4);
    const int nr = key.rounds();
    const int nw = 4 * (nr + 1);

    std::vector<std::uint32_t> w(nw);
    for (int i = 0; i < nk; ++i) {
        w[i] = (static_cast<std::uint32_t>(key.bytes()[4 * i]) << 24) |
               (static_cast<std::uint32_t>(key.bytes()[4 * i + 1]) << 16) |
               (static_cast<std::uint32_t>(key.bytes()[4 * i + 2]) << 8) |
               static_cast<std::uint32_t>(key.bytes()[4 * i + 3]);
    }

    auto sub_word = [](std::uint32_t x) {
        return (static_cast<std::uint32_t>(kSbox[(x >> 24) & 0xff]) << 24) |
               (static_cast<std::uint32_t>(kSbox[(x >> 16) & 0xff]) << 16) |
               (static_cast<std::uint32_t>(kSbox[(x >> 8) & 0xff]) << 8) |
               static_cast<std::uint32_t>(kSbox[x & 0xff]);
    };
    auto rot_word = [](std::uint32_t x) { return (x << 8) | (x >> 24); };

    for (int i = nk; i < nw; ++i) {
        std::uint32_t temp = w[i - 1];
        if (i % nk == 0) {
            temp = sub_word(rot_word(temp)) ^
                   (static_cast<std::uint32_t>(kRcon[i / nk]) << 24);
        } else if (nk > 6 && i % nk == 4) {
            temp = sub_word(temp);
        }
        w[i] = w[i - nk] ^ temp;
    }
    return RoundKeySchedule(std::move(w), nr);
}

namespace aes_detail {

inline void add_round_key(std::uint8_t* s, const std::uint32_t* w) {
    for (int c = 0; c < 4; ++c) {
        std::uint32_t word = w[c];
        s[4 * c + 0] ^= static_cast<std::uint8_t>(word >> 24);
        s[4 * c + 1] ^= static_cast<std::uint8_t>(word >> 16);
        s[4 * c + 2] ^= static_cast<std::uint8_t>(word >> 8);
        s[4 * c + 3] ^= static_cast<std::uint8_t>(word);
    }
}

inline void sub_bytes(std::uint8_t* s) {
    for (int i = 0; i < 16; ++i) s[i] = kSbox[s[i]];
}

inline void inv_sub_bytes(std::uint8_t* s) {
    for (int i = 0; i < 16; ++i) s[i] = kInvSbox[s[i]];
}

// Row r shifts left by r; state is column-major (s[r + 4c]).
inline void shift_rows(std::uint8_t* s) {
    std::uint8_t t;
    t = s[1]; s[1] = s[5]; s[5] = s[9]; s[9] = s[13]; s[13] = t;
    t = s[2]; s[2] = s[10]; s[10] = t; t = s[6]; s[6] = s[14]; s[14] = t;
    t = s[15]; s[15] = s[11]; s[11] = s[7]; s[7] = s[3]; s[3] = t;
}

inline void inv_shift_rows(std::uint8_t* s) {
    std::uint8_t t;
    t = s[13]; s[13] = s[9]; s[9] = s[5]; s[5] = s[1]; s[1] = t;
    t = s[2]; s[2] = s[10]; s[10] = t; t = s[6]; s[6] = s[14]; s[14] = t;
    t = s[3]; s[3] = s[7]; s[7] = s[11]; s[11] = s[15]; s[15] = t;
}

inline void mix_columns(std::uint8_t* s) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* col = s + 4 * c;
        std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        col[0] = kMul2[a0] ^ kMul3[a1] ^ a2 ^ a3;
        col[1] = a0 ^ kMul2[a1] ^ kMul3[a2] ^ a3;
        col[2] = a0 ^ a1 ^ kMul2[a2] ^ kMul3[a3];
        col[3] = kMul3[a0] ^ a1 ^ a2 ^ kMul2[a3];
    }
}

inline void inv_mix_columns(std::uint8_t* s) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* col = s + 4 * c;
        std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        col[0] = kMulE[a0] ^ kMulB[a1] ^ kMulD[a2] ^ kMul9[a3];
        col[1] = kMul9[a0] ^ kMulE[a1] ^ kMulB[a2] ^ kMulD[a3];
        col[2] = kMulD[a0] ^ kMul9[a1] ^ kMulE[a2] ^ kMulB[a3];
        col[3] = kMulB[a0] ^ kMulD[a1] ^ kMul9[a2] ^ kMulE[a3];
    }
}

} // namespace aes_detail

inline Block encrypt_block(const RoundKeySchedule& schedule, ByteView block) {
    using namespace aes_detail;
    if (block.size() != 16)
        throw InvalidBlockLength("AES block must be exactly 16 bytes");

    Block s;
    std::copy(block.begin(), block.end(), s.begin());
    const std::uint32_t* w = schedule.words().data();
    const int nr = schedule.rounds();

    add_round_key(s.data(), w);
    for (int round = 1; round < nr; ++round) {
        sub_bytes(s.data());
        shift_rows(s.data());
        mix_columns(s.data());
        add_round_key(s.data(), w + 4 * round);
    }
    sub_bytes(s.data());
    shift_rows(s.data());
    add_round_key(s.data(), w + 4 * nr);
    return s;
}

inline Block decrypt_block(const RoundKeySchedule& schedule, ByteView block) {
    using namespace aes_detail;
    if (block.size() != 16)
        throw InvalidBlockLength("AES block must be exactly 16 bytes");

    Block s;
    std::copy(block.begin(), block.end(), s.begin());
    const std::uint32_t* w = schedule.words().data();
    const int nr = schedule.rounds();

    add_round_key(s.data(), w + 4 * nr);
    for (int round = nr - 1; round > 0; --round) {
        inv_shift_rows(s.data());
        inv_sub_bytes(s.data());
        add_round_key(s.data(), w + 4 * round);
        inv_mix_columns(s.data());
    }
    inv_shift_rows(s.data());
    inv_sub_bytes(s.data());
    add_round_key(s.data(), w);
    return s;
}

} // namespace vaultdrop
