#pragma once

// HMAC-SHA256 (RFC 2104). The keyed inner/outer block states are
// precomputed once per key, which is what makes PBKDF2's iteration loop
// two compressions per round instead of four.

#include <array>

#include "vaultdrop/bytes.hpp"
#include "vaultdrop/sha256.hpp"

namespace vaultdrop {

class HmacSha256 {
public:
    explicit HmacSha256(ByteView key) {
        std::array<std::uint8_t, 64> block{};
        if (key.size() > 64) {
            // RFC 2104: keys longer than the block size are hashed first.
            Digest256 kd = sha256(key);
            std::copy(kd.begin(), kd.end(), block.begin());
        } else {
            std::copy(key.begin(), key.end(), block.begin());
        }

        std::array<std::uint8_t, 64> pad;
        Sha256 h;
        for (int i = 0; i < 64; ++i) pad[i] = block[i] ^ 0x36;
        h.update(pad);
        inner_ = h.snapshot();
        h.reset();
        for (int i = 0; i < 64; ++i) pad[i] = block[i] ^ 0x5c;
        h.update(pad);
        outer_ = h.snapshot();

        secure_wipe(block.data(), block.size());
        secure_wipe(pad.data(), pad.size());
    }

    Digest256 mac(ByteView message) const {
        Sha256 h;
        h.restore(inner_);
        h.update(message);
        Digest256 inner_digest = h.finish();
        h.restore(outer_);
        h.update(inner_digest);
        return h.finish();
    }

private:
    Sha256::State inner_;
    Sha256::State outer_;
};

inline Digest256 hmac_sha256(ByteView key, ByteView message) {
    return HmacSha256(key).mac(message);
}

} // namespace vaultdrop
