#pragma once

// AES-CBC with PKCS#7 padding. Padding is always applied, so ciphertext
// is one block longer than the plaintext rounded down: 16*floor(n/16)+16.

#include "vaultdrop/aes.hpp"

namespace vaultdrop {

inline Bytes cbc_encrypt(const AesKey& key, ByteView iv, ByteView plaintext) {
    if (iv.size() != 16)
        throw InvalidIvLength("CBC IV must be exactly 16 bytes");

    RoundKeySchedule schedule = key_expansion(key);

    const std::size_t pad = 16 - plaintext.size() % 16;
    const std::size_t out_len = plaintext.size() + pad;
    Bytes out(out_len);

    Block chain;
    std::copy(iv.begin(), iv.end(), chain.begin());

    for (std::size_t off = 0; off < out_len; off += 16) {
        Block input;
        for (int i = 0; i < 16; ++i) {
            std::size_t idx = off + i;
            std::uint8_t byte = idx < plaintext.size()
                                    ? plaintext[idx]
                                    : static_cast<std::uint8_t>(pad);
            input[i] = byte ^ chain[i];
        }
        chain = encrypt_block(schedule, input);
        std::copy(chain.begin(), chain.end(), out.begin() + off);
    }
    return out;
}

inline Bytes cbc_decrypt(const AesKey& key, ByteView iv, ByteView ciphertext) {
    if (iv.size() != 16)
        throw InvalidIvLength("CBC IV must be exactly 16 bytes");
    if (ciphertext.empty() || ciphertext.size() % 16 != 0)
        throw InvalidCiphertextLength(
            "CBC ciphertext must be a non-empty multiple of 16 bytes");

    RoundKeySchedule schedule = key_expansion(key);

    Bytes out(ciphertext.size());
    Block chain;
    std::copy(iv.begin(), iv.end(), chain.begin());

    for (std::size_t off = 0; off < ciphertext.size(); off += 16) {
        Block decrypted = decrypt_block(schedule, ciphertext.subspan(off, 16));
        for (int i = 0; i < 16; ++i) out[off + i] = decrypted[i] ^ chain[i];
        std::copy(ciphertext.begin() + off, ciphertext.begin() + off + 16,
                  chain.begin());
    }

    const std::uint8_t pad = out.back();
    if (pad == 0 || pad > 16)
        throw PaddingError("invalid PKCS#7 padding byte");
    for (std::size_t i = out.size() - pad; i < out.size(); ++i) {
        if (out[i] != pad) throw PaddingError("inconsistent PKCS#7 padding");
    }
    out.resize(out.size() - pad);
    return out;
}

} // namespace vaultdrop
