// vaultdrop -- encrypt locally, store remotely.
//
// Files are sealed client-side with a password-derived AES-256 key
// before anything touches the network; the server only ever holds
// ciphertext envelopes. See README.md for the tour.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <termios.h>
#include <unistd.h>

#include "CLI11.hpp"

#include "vaultdrop/cli_config.hpp"
#include "vaultdrop/clock.hpp"
#include "vaultdrop/http_client.hpp"
#include "vaultdrop/service.hpp"
#include "vaultdrop/workflows.hpp"

namespace {

using namespace vaultdrop;

constexpr std::size_t kMaxPasswordOctets = 1024;
constexpr const char* kDefaultServer = "http://127.0.0.1:8777";

struct CliContext {
    bool non_interactive = false;
    std::string server_flag;
    std::filesystem::path config_path = cli_config_path();
};

std::string resolve_server(const CliContext& ctx, const CliConfig& config) {
    if (!ctx.server_flag.empty()) return ctx.server_flag;
    if (const char* env = std::getenv("VAULTDROP_SERVER"); env && *env)
        return env;
    if (!config.server_url.empty()) return config.server_url;
    return kDefaultServer;
}

/// Read a secret from the terminal with echo disabled. Falls back to a
/// plain stdin line when stdin is not a tty (pipes in tests/scripts).
std::string prompt_secret(const std::string& label) {
    std::fputs((label + ": ").c_str(), stderr);
    std::fflush(stderr);

    bool tty = ::isatty(STDIN_FILENO);
    termios saved{};
    if (tty) {
        ::tcgetattr(STDIN_FILENO, &saved);
        termios quiet = saved;
        quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
        ::tcsetattr(STDIN_FILENO, TCSANOW, &quiet);
    }
    std::string line;
    std::getline(std::cin, line);
    if (tty) {
        ::tcsetattr(STDIN_FILENO, TCSANOW, &saved);
        std::fputc('\n', stderr);
    }
    return line;
}

/// Secret from --password, or interactively (optionally confirmed).
/// In --non-interactive mode a missing flag is an error, never a hang.
Bytes obtain_password(const CliContext& ctx, const std::string& flag_value,
                      const std::string& label, bool confirm) {
    std::string password = flag_value;
    if (password.empty()) {
        if (ctx.non_interactive)
            throw InvalidParameter("--non-interactive requires --password");
        password = prompt_secret(label);
        if (confirm && prompt_secret("Confirm " + label) != password)
            throw InvalidParameter("passwords do not match");
    }
    if (password.empty()) throw InvalidParameter("empty password");
    if (password.size() > kMaxPasswordOctets)
        throw InvalidParameter("password longer than 1024 bytes");
    return to_bytes(password);
}

std::string require_token(const CliConfig& config) {
    if (config.token.empty())
        throw AuthRequired("not logged in; run 'vaultdrop login <username>'");
    if (!config.token_expires_at.empty()) {
        try {
            if (std::chrono::system_clock::now() >=
                parse_utc(config.token_expires_at))
                throw AuthRequired(
                    "session expired; run 'vaultdrop login <username>'");
        } catch (const InvalidParameter&) {
            // Unparseable expiry: let the server decide.
        }
    }
    return config.token;
}

bool ask_yes_no(const std::string& question) {
    std::fputs((question + " [y/N]: ").c_str(), stderr);
    std::fflush(stderr);
    std::string line;
    std::getline(std::cin, line);
    return line == "y" || line == "Y" || line == "yes" || line == "Yes";
}

int cmd_register(const CliContext& ctx, const std::string& username,
                 const std::string& password_flag) {
    CliConfig config = load_cli_config(ctx.config_path);
    Bytes password = obtain_password(ctx, password_flag, "Password", true);

    ServiceClient client(resolve_server(ctx, config));
    client.register_user(username, to_string(password));
    std::cout << "registered " << username << "\n";
    return 0;
}

int cmd_login(CliContext& ctx, const std::string& username,
              const std::string& password_flag) {
    CliConfig config = load_cli_config(ctx.config_path);
    Bytes password = obtain_password(ctx, password_flag, "Password", false);

    std::string server = resolve_server(ctx, config);
    ServiceClient client(server);
    LoginResult result = client.login(username, to_string(password));

    config.server_url = server;
    config.token = result.token;
    config.token_expires_at = result.expires_at;
    save_cli_config(ctx.config_path, config);

    std::cout << "logged in as " << username << " (session expires "
              << result.expires_at << ")\n";
    return 0;
}

int cmd_logout(const CliContext& ctx) {
    CliConfig config = load_cli_config(ctx.config_path);
    if (!config.token.empty()) {
        try {
            ServiceClient(resolve_server(ctx, config)).logout(config.token);
        } catch (const ConnectionFailure&) {
            std::cerr << "warning: server unreachable, clearing local session anyway\n";
        }
    }
    config.token.clear();
    config.token_expires_at.clear();
    save_cli_config(ctx.config_path, config);
    std::cout << "logged out\n";
    return 0;
}

int cmd_upload(const CliContext& ctx, const std::string& path,
               const std::string& remote_name, bool delete_original,
               bool delete_flag_given, std::uint32_t iterations,
               const std::string& password_flag) {
    CliConfig config = load_cli_config(ctx.config_path);
    std::string token = require_token(config);

    UploadRequest request;
    request.local_path = path;
    request.remote_name = remote_name;
    request.encryption_password =
        obtain_password(ctx, password_flag, "Encryption password", true);
    request.iterations = iterations > 0 ? iterations : config.default_iterations;

    if (request.encryption_password.size() < 16)
        std::cerr << "warning: long passphrases are recommended for the "
                     "encryption password\n";

    if (delete_flag_given) {
        request.delete_original = delete_original;
    } else if (!ctx.non_interactive) {
        request.delete_original =
            ask_yes_no("Delete the original file once it is uploaded?");
    }

    HttpBackend backend(resolve_server(ctx, config), token);
    RemoteObject obj = upload_file(backend, request);
    std::cout << obj.name << " (" << obj.size << " bytes)\n";
    if (request.delete_original)
        std::cout << "original deleted: " << path << "\n";
    return 0;
}

int cmd_download(const CliContext& ctx, const std::string& name,
                 const std::string& out, bool delete_remote,
                 const std::string& password_flag) {
    CliConfig config = load_cli_config(ctx.config_path);
    std::string token = require_token(config);

    DownloadRequest request;
    request.remote_name = name;
    request.encryption_password =
        obtain_password(ctx, password_flag, "Encryption password", false);
    request.delete_remote = delete_remote;
    if (!out.empty()) {
        request.dest_path = out;
    } else if (name.size() > 4 && name.ends_with(".esf")) {
        request.dest_path = name.substr(0, name.size() - 4);
    } else {
        request.dest_path = name + ".out";
    }

    HttpBackend backend(resolve_server(ctx, config), token);
    download_file(backend, request);
    std::cout << request.dest_path.string() << "\n";
    if (delete_remote) std::cout << "remote copy deleted: " << name << "\n";
    return 0;
}

int cmd_list(const CliContext& ctx) {
    CliConfig config = load_cli_config(ctx.config_path);
    std::string token = require_token(config);

    HttpBackend backend(resolve_server(ctx, config), token);
    for (const auto& obj : list_remote(backend))
        std::cout << obj.name << "\t" << obj.size << "\t" << obj.modified_at << "\n";
    return 0;
}

int cmd_serve(const std::string& bind, const std::string& data_dir,
              std::uint32_t token_ttl, std::uint64_t max_blob) {
    ServiceConfig config;
    config.bind_address = bind;
    config.data_dir = data_dir;
    config.token_ttl_seconds = token_ttl;
    config.max_blob_size = max_blob;

    Service service(config);
    service.bind();
    std::cout << "vaultdrop service listening on " << service.base_url() << "\n"
              << "data dir: " << config.data_dir.string() << "\n";
    service.run();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vaultdrop: client-side encrypted cloud file storage"};
    app.require_subcommand(1);
    app.fallthrough();

    CliContext ctx;
    app.add_flag("--non-interactive", ctx.non_interactive,
                 "never prompt; take all input from flags");
    app.add_option("--server", ctx.server_flag,
                   "server URL (overrides VAULTDROP_SERVER and config)");

    std::string username, password_flag;
    auto* reg = app.add_subcommand("register", "create an account");
    reg->add_option("username", username)->required();
    reg->add_option("--password", password_flag,
                    "account password (prompted when omitted)");

    auto* login = app.add_subcommand("login", "authenticate and store a session");
    login->add_option("username", username)->required();
    login->add_option("--password", password_flag);

    auto* logout = app.add_subcommand("logout", "end the session");

    std::string upload_path, upload_name, enc_password_flag;
    bool delete_original = false;
    std::uint32_t iterations = 0;
    auto* upload = app.add_subcommand("upload", "encrypt a file and upload it");
    upload->add_option("path", upload_path, "local file")->required();
    upload->add_option("--name", upload_name,
                       "remote object name (default: basename + .esf)");
    auto* delete_original_opt = upload->add_flag(
        "--delete-original", delete_original,
        "delete the local file after a successful upload");
    upload->add_option("--iterations", iterations, "PBKDF2 iteration count");
    upload->add_option("--password", enc_password_flag,
                       "encryption password (prompted when omitted)");

    std::string download_name, download_out;
    bool delete_remote = false;
    auto* download = app.add_subcommand("download",
                                        "fetch an object and decrypt it");
    download->add_option("name", download_name)->required();
    download->add_option("--out", download_out,
                         "destination path (default: name minus .esf)");
    download->add_flag("--delete-remote", delete_remote,
                       "delete the remote object after a successful download");
    download->add_option("--password", enc_password_flag);

    auto* list = app.add_subcommand("list", "show uploaded objects");

    std::string bind = "127.0.0.1:8777", data_dir = "vaultdrop-data";
    std::uint32_t token_ttl = kDefaultTokenTtlSeconds;
    std::uint64_t max_blob = kDefaultMaxBlobSize;
    auto* serve = app.add_subcommand("serve", "run the storage service");
    serve->add_option("--bind", bind, "host:port")->envname("VAULTDROP_BIND");
    serve->add_option("--data-dir", data_dir)->envname("VAULTDROP_DATA_DIR");
    serve->add_option("--token-ttl", token_ttl, "seconds")
        ->envname("VAULTDROP_TOKEN_TTL");
    serve->add_option("--max-blob", max_blob, "bytes")
        ->envname("VAULTDROP_MAX_BLOB");

    CLI11_PARSE(app, argc, argv);

    try {
        if (reg->parsed()) return cmd_register(ctx, username, password_flag);
        if (login->parsed()) return cmd_login(ctx, username, password_flag);
        if (logout->parsed()) return cmd_logout(ctx);
        if (upload->parsed())
            return cmd_upload(ctx, upload_path, upload_name, delete_original,
                              delete_original_opt->count() > 0, iterations,
                              enc_password_flag);
        if (download->parsed())
            return cmd_download(ctx, download_name, download_out, delete_remote,
                                enc_password_flag);
        if (list->parsed()) return cmd_list(ctx);
        if (serve->parsed()) return cmd_serve(bind, data_dir, token_ttl, max_blob);
    } catch (const PasswordInvalid&) {
        std::cerr << "password rejected\n";
        return 2;
    } catch (const AuthRequired& e) {
        std::cerr << "error: " << e.what()
                  << "\nrun 'vaultdrop login <username>' to start a new session\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
