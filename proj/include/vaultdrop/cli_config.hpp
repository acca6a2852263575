#pragma once

// CLI state persisted between invocations: server URL, the current
// session token and its expiry. Lives as key=value text under the user
// config directory with owner-only permissions. Passwords are never
// written here.

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include "vaultdrop/bytes.hpp"
#include "vaultdrop/envelope.hpp"
#include "vaultdrop/fsutil.hpp"

namespace vaultdrop {

struct CliConfig {
    std::string server_url;
    std::string token;
    std::string token_expires_at;
    std::uint32_t default_iterations = kDefaultIterations;
};

inline std::filesystem::path cli_config_path() {
    if (const char* xdg = std::getenv("XDG_CONFIG_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "vaultdrop" / "config";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".config" / "vaultdrop" / "config";
    return std::filesystem::path(".vaultdrop_config");
}

inline CliConfig load_cli_config(const std::filesystem::path& path) {
    CliConfig config;
    auto data = try_read_file(path);
    if (!data) return config;

    std::istringstream in(to_string(*data));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "server_url") config.server_url = value;
        else if (key == "token") config.token = value;
        else if (key == "token_expires_at") config.token_expires_at = value;
        else if (key == "default_iterations")
            config.default_iterations =
                static_cast<std::uint32_t>(std::stoul(value));
    }
    return config;
}

inline void save_cli_config(const std::filesystem::path& path,
                            const CliConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::filesystem::permissions(path.parent_path(),
                                 std::filesystem::perms::owner_all,
                                 std::filesystem::perm_options::replace, ec);

    std::string out;
    if (!config.server_url.empty()) out += "server_url=" + config.server_url + "\n";
    if (!config.token.empty()) {
        out += "token=" + config.token + "\n";
        out += "token_expires_at=" + config.token_expires_at + "\n";
    }
    out += "default_iterations=" + std::to_string(config.default_iterations) + "\n";

    if (!write_file_atomic(path, to_bytes(out)))
        throw StorageFailure("cannot write config: " + path.string());
    // write_file_atomic creates the temp file 0600; make sure a
    // pre-existing config is tightened too.
    std::filesystem::permissions(path,
                                 std::filesystem::perms::owner_read |
                                     std::filesystem::perms::owner_write,
                                 std::filesystem::perm_options::replace, ec);
}

} // namespace vaultdrop
