#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>

#include <fcntl.h>
#include <unistd.h>

#include "vaultdrop/bytes.hpp"

namespace vaultdrop {

inline std::optional<Bytes> try_read_file(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    Bytes data((std::istreambuf_iterator<char>(in)),
               std::istreambuf_iterator<char>());
    if (in.bad()) return std::nullopt;
    return data;
}

/// Write-temp-then-rename so readers never observe a torn file. The data
/// is synced before the rename; the rename itself is atomic on POSIX.
inline bool write_file_atomic(const std::filesystem::path& path, ByteView data) {
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());

    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    if (fd < 0) return false;

    const std::uint8_t* p = data.data();
    std::size_t remaining = data.size();
    while (remaining > 0) {
        ssize_t n = ::write(fd, p, remaining);
        if (n < 0) {
            ::close(fd);
            ::unlink(tmp.c_str());
            return false;
        }
        p += n;
        remaining -= static_cast<std::size_t>(n);
    }
    if (::fsync(fd) != 0 || ::close(fd) != 0) {
        ::unlink(tmp.c_str());
        return false;
    }

    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        ::unlink(tmp.c_str());
        return false;
    }
    return true;
}

} // namespace vaultdrop
