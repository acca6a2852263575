#pragma once

// Client side of the service API: ServiceClient covers the account
// endpoints, HttpBackend plugs the per-user blob namespace into the
// StorageBackend interface. A failed connection surfaces as
// ConnectionFailure -- the workflows treat that as "no stable
// connection" and abort without touching local state.

#include <string>

#include "httplib.h"
#include "json.hpp"

#include "vaultdrop/auth.hpp"
#include "vaultdrop/storage.hpp"

namespace vaultdrop {

inline std::string percent_encode(const std::string& s) {
    static constexpr char hexd[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                          (c >= '0' && c <= '9') || c == '-' || c == '.' ||
                          c == '_' || c == '~';
        if (unreserved) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hexd[c >> 4]);
            out.push_back(hexd[c & 0x0f]);
        }
    }
    return out;
}

struct LoginResult {
    std::string token;
    std::string expires_at;
};

class ServiceClient {
public:
    explicit ServiceClient(std::string base_url)
        : base_url_(std::move(base_url)), client_(base_url_) {
        client_.set_connection_timeout(10);
        client_.set_read_timeout(300);
        client_.set_write_timeout(300);
    }

    void register_user(const std::string& username, const std::string& password) {
        nlohmann::json body = {{"username", username}, {"password", password}};
        auto res = client_.Post("/api/register", body.dump(), "application/json");
        if (!res)
            throw ConnectionFailure("cannot reach server at " + base_url_);
        if (res->status == 201) return;
        if (res->status == 409)
            throw UserExists("username already exists: " + username);
        if (res->status == 400)
            throw InvalidParameter(error_text(*res));
        throw StorageFailure("register failed: HTTP " + std::to_string(res->status));
    }

    LoginResult login(const std::string& username, const std::string& password) {
        nlohmann::json body = {{"username", username}, {"password", password}};
        auto res = client_.Post("/api/login", body.dump(), "application/json");
        if (!res)
            throw ConnectionFailure("cannot reach server at " + base_url_);
        if (res->status == 401)
            throw AuthenticationError(kAuthErrorMessage);
        if (res->status != 200)
            throw StorageFailure("login failed: HTTP " + std::to_string(res->status));
        auto parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("token"))
            throw StorageFailure("malformed login response");
        return LoginResult{parsed["token"].get<std::string>(),
                           parsed.value("expires_at", "")};
    }

    /// Best-effort revoke; server treats unknown tokens as a no-op.
    void logout(const std::string& token) {
        httplib::Headers headers = {{"Authorization", "Bearer " + token}};
        auto res = client_.Post("/api/logout", headers, "", "application/json");
        if (!res)
            throw ConnectionFailure("cannot reach server at " + base_url_);
    }

    bool healthy() {
        auto res = client_.Get("/healthz");
        return res && res->status == 200;
    }

private:
    static std::string error_text(const httplib::Response& res) {
        auto parsed = nlohmann::json::parse(res.body, nullptr, false);
        if (!parsed.is_discarded() && parsed.contains("error"))
            return parsed["error"].get<std::string>();
        return "HTTP " + std::to_string(res.status);
    }

    std::string base_url_;
    httplib::Client client_;
};

/// Blob storage over the service API; the session token rides along on
/// every request as a Bearer header.
class HttpBackend : public StorageBackend {
public:
    HttpBackend(std::string base_url, std::string token)
        : base_url_(std::move(base_url)), token_(std::move(token)),
          client_(base_url_) {
        client_.set_connection_timeout(10);
        client_.set_read_timeout(300);
        client_.set_write_timeout(300);
    }

    RemoteObject put(const std::string& name, ByteView bytes) override {
        require_valid_name(name);
        auto res = client_.Put("/api/files/" + percent_encode(name), auth_headers(),
                               reinterpret_cast<const char*>(bytes.data()),
                               bytes.size(), "application/octet-stream");
        check_common(res);
        if (res->status == 400) throw NameInvalid("server rejected name: " + name);
        if (res->status == 413) throw StorageFailure("blob too large");
        if (res->status != 201)
            throw StorageFailure("put failed: HTTP " + std::to_string(res->status));
        return parse_object(res->body);
    }

    Bytes get(const std::string& name) override {
        require_valid_name(name);
        auto res = client_.Get("/api/files/" + percent_encode(name), auth_headers());
        check_common(res);
        if (res->status == 404) throw NotFound("no such object: " + name);
        if (res->status != 200)
            throw StorageFailure("get failed: HTTP " + std::to_string(res->status));
        return Bytes(res->body.begin(), res->body.end());
    }

    std::vector<RemoteObject> list() override {
        auto res = client_.Get("/api/files", auth_headers());
        check_common(res);
        if (res->status != 200)
            throw StorageFailure("list failed: HTTP " + std::to_string(res->status));
        auto parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_array())
            throw StorageFailure("malformed list response");
        std::vector<RemoteObject> out;
        for (const auto& item : parsed) {
            out.push_back(RemoteObject{item.at("name").get<std::string>(),
                                       item.at("size").get<std::uint64_t>(),
                                       item.at("modified_at").get<std::string>()});
        }
        return out;
    }

    void remove(const std::string& name) override {
        require_valid_name(name);
        auto res = client_.Delete("/api/files/" + percent_encode(name), auth_headers());
        check_common(res);
        if (res->status == 404) throw NotFound("no such object: " + name);
        if (res->status != 204)
            throw StorageFailure("delete failed: HTTP " + std::to_string(res->status));
    }

private:
    httplib::Headers auth_headers() const {
        return {{"Authorization", "Bearer " + token_}};
    }

    void check_common(const httplib::Result& res) const {
        if (!res)
            throw ConnectionFailure("cannot reach server at " + base_url_);
        if (res->status == 401)
            throw AuthRequired("session invalid or expired");
    }

    static RemoteObject parse_object(const std::string& body) {
        auto parsed = nlohmann::json::parse(body, nullptr, false);
        if (parsed.is_discarded())
            throw StorageFailure("malformed object response");
        return RemoteObject{parsed.at("name").get<std::string>(),
                            parsed.at("size").get<std::uint64_t>(),
                            parsed.at("modified_at").get<std::string>()};
    }

    std::string base_url_;
    std::string token_;
    httplib::Client client_;
};

/// Instantiate the backend a config describes. The session token is
/// only consulted for the http kind; local backends need none.
inline std::unique_ptr<StorageBackend> make_backend(const BackendConfig& config,
                                                    const std::string& token = {}) {
    config.validate();
    switch (config.kind) {
    case BackendConfig::Kind::in_memory:
        return std::make_unique<InMemoryBackend>(config.max_blob_size);
    case BackendConfig::Kind::local_dir:
        return std::make_unique<LocalDirBackend>(config.root_path,
                                                 config.max_blob_size);
    case BackendConfig::Kind::http:
        return std::make_unique<HttpBackend>(config.base_url, token);
    }
    throw InvalidParameter("unknown backend kind");
}

} // namespace vaultdrop
