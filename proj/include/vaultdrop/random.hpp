#pragma once

#include <fstream>

#include "vaultdrop/bytes.hpp"

namespace vaultdrop {

/// n octets from the OS entropy source. Used for salts, IVs and session
/// tokens; never seeded or reproducible.
inline Bytes random_bytes(std::size_t n) {
    Bytes out(n);
    if (n == 0) return out;
    std::ifstream urandom("/dev/urandom", std::ios::binary);
    if (!urandom ||
        !urandom.read(reinterpret_cast<char*>(out.data()),
                      static_cast<std::streamsize>(n)))
        throw EntropyUnavailable("cannot read /dev/urandom");
    return out;
}

} // namespace vaultdrop
