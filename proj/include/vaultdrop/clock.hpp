#pragma once

#include <chrono>
#include <ctime>
#include <string>

#include "vaultdrop/errors.hpp"

namespace vaultdrop {

using TimePoint = std::chrono::system_clock::time_point;

/// UTC timestamp as "YYYY-MM-DDTHH:MM:SSZ".
inline std::string format_utc(TimePoint tp) {
    std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string now_utc() {
    return format_utc(std::chrono::system_clock::now());
}

inline TimePoint parse_utc(const std::string& iso) {
    std::tm tm{};
    if (::strptime(iso.c_str(), "%Y-%m-%dT%H:%M:%SZ", &tm) == nullptr)
        throw InvalidParameter("bad UTC timestamp: " + iso);
    std::time_t t = ::timegm(&tm);
    return std::chrono::system_clock::from_time_t(t);
}

} // namespace vaultdrop
