#pragma once

// The "cloud" side: a small HTTP/1.1 service offering registration,
// login and per-user blob storage. It only ever sees ciphertext
// envelopes; encryption passwords never reach it.
//
//   POST   /api/register       {"username","password"}  201/400/409
//   POST   /api/login          {"username","password"}  200 {"token","expires_at"} / 401
//   POST   /api/logout         Bearer token             204
//   GET    /api/files          (auth)                   200 [{"name","size","modified_at"}]
//   PUT    /api/files/{name}   (auth, raw body)         201/400/401/413
//   GET    /api/files/{name}   (auth)                   200 raw / 404
//   DELETE /api/files/{name}   (auth)                   204/404
//   GET    /healthz                                     200 "ok"

#include <memory>
#include <thread>
#include <unordered_map>

#include "httplib.h"
#include "json.hpp"

#include "vaultdrop/auth.hpp"
#include "vaultdrop/storage.hpp"

namespace vaultdrop {

struct ServiceConfig {
    std::string bind_address = "127.0.0.1:8777"; // port 0 = ephemeral
    std::filesystem::path data_dir;
    std::uint32_t token_ttl_seconds = kDefaultTokenTtlSeconds;
    std::uint64_t max_blob_size = kDefaultMaxBlobSize;
};

class Service {
public:
    explicit Service(ServiceConfig config) : config_(std::move(config)) {
        std::error_code ec;
        std::filesystem::create_directories(config_.data_dir, ec);
        if (ec || !std::filesystem::is_directory(config_.data_dir))
            throw DataDirUnavailable("data dir unavailable: " +
                                     config_.data_dir.string());
        // Probe writability up front rather than failing on first request.
        auto probe = config_.data_dir / ".write_probe";
        if (!write_file_atomic(probe, Bytes{}))
            throw DataDirUnavailable("data dir not writable: " +
                                     config_.data_dir.string());
        std::filesystem::remove(probe, ec);

        auth_ = std::make_unique<AuthStore>(
            config_.data_dir / "users.tsv",
            AuthStore::Options{kLoginHashIterations, config_.token_ttl_seconds});

        server_.set_payload_max_length(config_.max_blob_size);
        // SO_REUSEADDR only (no SO_REUSEPORT): restarts reclaim the port
        // quickly, but a second live instance on the same port must fail.
        server_.set_socket_options([](socket_t sock) {
            int yes = 1;
            ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
        });
        install_routes();
    }

    ~Service() { stop(); }

    /// Claim the configured address; throws BindFailure if it is taken.
    /// Idempotent; start() and run() call it on demand.
    void bind() {
        if (bound_) return;
        auto colon = config_.bind_address.rfind(':');
        if (colon == std::string::npos)
            throw InvalidParameter("bind address must be host:port");
        host_ = config_.bind_address.substr(0, colon);
        int port = std::stoi(config_.bind_address.substr(colon + 1));

        if (port == 0) {
            port_ = server_.bind_to_any_port(host_);
            if (port_ < 0)
                throw BindFailure("cannot bind " + config_.bind_address);
        } else {
            if (!server_.bind_to_port(host_, port))
                throw BindFailure("cannot bind " + config_.bind_address);
            port_ = port;
        }
        bound_ = true;
    }

    /// Serve on a background thread; returns once the listener is ready.
    void start() {
        bind();
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    /// Serve on the calling thread (CLI `serve`).
    void run() {
        bind();
        server_.listen_after_bind();
    }

    void stop() {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }

    int port() const { return port_; }

    std::string base_url() const {
        return "http://" + host_ + ":" + std::to_string(port_);
    }

private:
    static void send_json(httplib::Response& res, int status,
                          const nlohmann::json& body) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }

    // One fixed 401 payload for every authentication failure: wrong
    // password, unknown user and bad/expired tokens are indistinguishable.
    static void send_auth_error(httplib::Response& res) {
        send_json(res, 401, {{"error", kAuthErrorMessage}});
    }

    /// Resolve the Bearer token to a username, or fail the request.
    std::optional<std::string> authorize(const httplib::Request& req,
                                         httplib::Response& res) {
        std::string header = req.get_header_value("Authorization");
        constexpr std::string_view prefix = "Bearer ";
        if (header.size() <= prefix.size() ||
            header.compare(0, prefix.size(), prefix) != 0) {
            send_auth_error(res);
            return std::nullopt;
        }
        try {
            return auth_->validate_token(header.substr(prefix.size()));
        } catch (const TokenInvalid&) {
            send_auth_error(res);
            return std::nullopt;
        }
    }

    StorageBackend& user_store(const std::string& username) {
        std::lock_guard lock(stores_mutex_);
        auto it = stores_.find(username);
        if (it == stores_.end()) {
            auto dir = config_.data_dir / "blobs" /
                       hex_encode(sha256(to_bytes(username))).substr(0, 32);
            it = stores_
                     .emplace(username, std::make_unique<LocalDirBackend>(
                                            dir, config_.max_blob_size))
                     .first;
        }
        return *it->second;
    }

    static nlohmann::json object_json(const RemoteObject& obj) {
        return {{"name", obj.name},
                {"size", obj.size},
                {"modified_at", obj.modified_at}};
    }

    void install_routes() {
        server_.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("ok", "text/plain");
        });

        server_.Post("/api/register", [this](const httplib::Request& req,
                                             httplib::Response& res) {
            std::string username, password;
            if (!parse_credentials(req.body, username, password)) {
                send_json(res, 400, {{"error", "malformed request"}});
                return;
            }
            try {
                auth_->register_user(username, to_bytes(password));
                send_json(res, 201, {{"username", username}});
            } catch (const UserExists&) {
                send_json(res, 409, {{"error", "username already exists"}});
            } catch (const WeakPassword& e) {
                send_json(res, 400, {{"error", e.what()}});
            } catch (const InvalidParameter& e) {
                send_json(res, 400, {{"error", e.what()}});
            }
        });

        server_.Post("/api/login", [this](const httplib::Request& req,
                                          httplib::Response& res) {
            std::string username, password;
            if (!parse_credentials(req.body, username, password)) {
                send_auth_error(res);
                return;
            }
            try {
                SessionToken token = auth_->authenticate(username, to_bytes(password));
                send_json(res, 200,
                          {{"token", token.token},
                           {"expires_at", format_utc(token.expires_at)}});
            } catch (const AuthenticationError&) {
                send_auth_error(res);
            }
        });

        server_.Post("/api/logout", [this](const httplib::Request& req,
                                           httplib::Response& res) {
            std::string header = req.get_header_value("Authorization");
            constexpr std::string_view prefix = "Bearer ";
            if (header.size() > prefix.size() &&
                header.compare(0, prefix.size(), prefix) == 0)
                auth_->revoke(header.substr(prefix.size()));
            res.status = 204; // idempotent, even for unknown tokens
        });

        server_.Get("/api/files", [this](const httplib::Request& req,
                                         httplib::Response& res) {
            auto user = authorize(req, res);
            if (!user) return;
            nlohmann::json array = nlohmann::json::array();
            for (const auto& obj : user_store(*user).list())
                array.push_back(object_json(obj));
            send_json(res, 200, array);
        });

        server_.Put(R"(/api/files/(.+))", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
            auto user = authorize(req, res);
            if (!user) return;
            const std::string name = req.matches[1];
            if (!object_name_valid(name)) {
                send_json(res, 400, {{"error", "invalid object name"}});
                return;
            }
            if (req.body.size() > config_.max_blob_size) {
                send_json(res, 413, {{"error", "blob too large"}});
                return;
            }
            ByteView body(reinterpret_cast<const std::uint8_t*>(req.body.data()),
                          req.body.size());
            send_json(res, 201, object_json(user_store(*user).put(name, body)));
        });

        server_.Get(R"(/api/files/(.+))", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
            auto user = authorize(req, res);
            if (!user) return;
            const std::string name = req.matches[1];
            try {
                Bytes data = user_store(*user).get(name);
                res.set_content(std::string(data.begin(), data.end()),
                                "application/octet-stream");
            } catch (const NotFound&) {
                send_json(res, 404, {{"error", "not found"}});
            } catch (const NameInvalid&) {
                send_json(res, 404, {{"error", "not found"}});
            }
        });

        server_.Delete(R"(/api/files/(.+))", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
            auto user = authorize(req, res);
            if (!user) return;
            const std::string name = req.matches[1];
            try {
                user_store(*user).remove(name);
                res.status = 204;
            } catch (const NotFound&) {
                send_json(res, 404, {{"error", "not found"}});
            } catch (const NameInvalid&) {
                send_json(res, 404, {{"error", "not found"}});
            }
        });
    }

    static bool parse_credentials(const std::string& body, std::string& username,
                                  std::string& password) {
        auto parsed = nlohmann::json::parse(body, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object()) return false;
        if (!parsed.contains("username") || !parsed["username"].is_string())
            return false;
        if (!parsed.contains("password") || !parsed["password"].is_string())
            return false;
        username = parsed["username"].get<std::string>();
        password = parsed["password"].get<std::string>();
        return true;
    }

    ServiceConfig config_;
    std::string host_;
    int port_ = -1;
    bool bound_ = false;
    httplib::Server server_;
    std::unique_ptr<AuthStore> auth_;
    std::unordered_map<std::string, std::unique_ptr<LocalDirBackend>> stores_;
    std::mutex stores_mutex_;
    std::thread thread_;
};

} // namespace vaultdrop
