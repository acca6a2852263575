#pragma once

// PBKDF2 with HMAC-SHA256 as the PRF (RFC 2898). Iterating the PRF
// stretches a password: the attacker pays the full iteration count for
// every guess.

#include <cstdint>

#include "vaultdrop/bytes.hpp"
#include "vaultdrop/hmac.hpp"

namespace vaultdrop {

inline Bytes pbkdf2_hmac_sha256(ByteView password, ByteView salt,
                                std::uint32_t iterations, std::size_t dklen) {
    if (iterations == 0)
        throw InvalidParameter("pbkdf2: iteration count must be >= 1");
    if (dklen == 0)
        throw InvalidParameter("pbkdf2: derived key length must be >= 1");

    HmacSha256 prf(password);
    Bytes out;
    out.reserve(dklen);

    Bytes block_input(salt.begin(), salt.end());
    block_input.resize(salt.size() + 4);

    std::uint32_t block_index = 1;
    while (out.size() < dklen) {
        block_input[salt.size() + 0] = static_cast<std::uint8_t>(block_index >> 24);
        block_input[salt.size() + 1] = static_cast<std::uint8_t>(block_index >> 16);
        block_input[salt.size() + 2] = static_cast<std::uint8_t>(block_index >> 8);
        block_input[salt.size() + 3] = static_cast<std::uint8_t>(block_index);

        Digest256 u = prf.mac(block_input);
        Digest256 t = u;
        for (std::uint32_t i = 1; i < iterations; ++i) {
            u = prf.mac(u);
            for (int j = 0; j < 32; ++j) t[j] ^= u[j];
        }

        std::size_t take = std::min<std::size_t>(32, dklen - out.size());
        out.insert(out.end(), t.begin(), t.begin() + take);
        ++block_index;
    }
    return out;
}

} // namespace vaultdrop
