#pragma once

// Blob store interface the workflows upload ciphertext through, with
// in-memory and local-directory implementations. The remote (HTTP)
// implementation lives in http_client.hpp; all three must be
// behaviorally indistinguishable through this interface.

#include <algorithm>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "vaultdrop/bytes.hpp"
#include "vaultdrop/clock.hpp"
#include "vaultdrop/fsutil.hpp"
#include "vaultdrop/sha256.hpp"

namespace vaultdrop {

inline constexpr std::size_t kMaxObjectNameLength = 255;
inline constexpr std::uint64_t kDefaultMaxBlobSize = 1ull << 30; // 1 GiB

struct RemoteObject {
    std::string name;
    std::uint64_t size = 0;
    std::string modified_at; // UTC, ISO-8601

    bool operator==(const RemoteObject&) const = default;
};

/// Which backend to talk to. Exactly the fields for the chosen kind may
/// be set: root_path for local_dir, base_url for http, neither for
/// in_memory. make_backend() (http_client.hpp) turns one into a live
/// StorageBackend.
struct BackendConfig {
    enum class Kind { local_dir, in_memory, http };

    Kind kind = Kind::in_memory;
    std::filesystem::path root_path; // local_dir only
    std::string base_url;            // http only
    std::uint64_t max_blob_size = kDefaultMaxBlobSize;

    void validate() const {
        switch (kind) {
        case Kind::local_dir:
            if (root_path.empty() || !base_url.empty())
                throw InvalidParameter("local_dir config takes root_path only");
            break;
        case Kind::in_memory:
            if (!root_path.empty() || !base_url.empty())
                throw InvalidParameter("in_memory config takes no location");
            break;
        case Kind::http:
            if (base_url.empty() || !root_path.empty())
                throw InvalidParameter("http config takes base_url only");
            break;
        }
    }
};

/// Names are flat: no directories, no path separators, 1-255 bytes.
inline bool object_name_valid(const std::string& name) {
    if (name.empty() || name.size() > kMaxObjectNameLength) return false;
    if (name == "." || name == "..") return false;
    for (unsigned char c : name) {
        if (c == '/' || c == '\\') return false;
        if (c < 0x20 || c == 0x7f) return false;
    }
    return true;
}

inline void require_valid_name(const std::string& name) {
    if (!object_name_valid(name))
        throw NameInvalid("invalid object name: " + name);
}

class StorageBackend {
public:
    virtual ~StorageBackend() = default;

    /// Store bytes under name; overwrite is atomic last-write-wins.
    virtual RemoteObject put(const std::string& name, ByteView bytes) = 0;
    virtual Bytes get(const std::string& name) = 0;
    /// All live objects, sorted lexicographically by name.
    virtual std::vector<RemoteObject> list() = 0;
    virtual void remove(const std::string& name) = 0;
};

class InMemoryBackend : public StorageBackend {
public:
    explicit InMemoryBackend(std::uint64_t max_blob_size = kDefaultMaxBlobSize)
        : max_blob_size_(max_blob_size) {}

    RemoteObject put(const std::string& name, ByteView bytes) override {
        require_valid_name(name);
        if (bytes.size() > max_blob_size_)
            throw StorageFailure("blob exceeds size limit");
        std::lock_guard lock(mutex_);
        Entry& e = blobs_[name];
        e.data.assign(bytes.begin(), bytes.end());
        e.modified_at = now_utc();
        return RemoteObject{name, e.data.size(), e.modified_at};
    }

    Bytes get(const std::string& name) override {
        require_valid_name(name);
        std::lock_guard lock(mutex_);
        auto it = blobs_.find(name);
        if (it == blobs_.end()) throw NotFound("no such object: " + name);
        return it->second.data;
    }

    std::vector<RemoteObject> list() override {
        std::lock_guard lock(mutex_);
        std::vector<RemoteObject> out;
        out.reserve(blobs_.size());
        for (const auto& [name, e] : blobs_)
            out.push_back(RemoteObject{name, e.data.size(), e.modified_at});
        return out; // std::map iterates in sorted order
    }

    void remove(const std::string& name) override {
        require_valid_name(name);
        std::lock_guard lock(mutex_);
        if (blobs_.erase(name) == 0) throw NotFound("no such object: " + name);
    }

private:
    struct Entry {
        Bytes data;
        std::string modified_at;
    };
    std::map<std::string, Entry> blobs_;
    std::uint64_t max_blob_size_;
    std::mutex mutex_;
};

/// Directory-backed store. Blobs land under hashed file names so any
/// valid object name maps to a filesystem-safe path:
///   <root>/<hex(sha256(name))[0..32]>.blob  +  sidecar .meta
/// The sidecar carries `name \t size \t modified_at`.
class LocalDirBackend : public StorageBackend {
public:
    explicit LocalDirBackend(std::filesystem::path root,
                             std::uint64_t max_blob_size = kDefaultMaxBlobSize)
        : root_(std::move(root)), max_blob_size_(max_blob_size) {
        std::error_code ec;
        std::filesystem::create_directories(root_, ec);
        if (ec)
            throw StorageFailure("cannot create storage root: " + root_.string());
    }

    RemoteObject put(const std::string& name, ByteView bytes) override {
        require_valid_name(name);
        if (bytes.size() > max_blob_size_)
            throw StorageFailure("blob exceeds size limit");
        std::lock_guard lock(mutex_);

        RemoteObject obj{name, bytes.size(), now_utc()};
        std::string meta = name + "\t" + std::to_string(obj.size) + "\t" +
                           obj.modified_at + "\n";
        // Blob first, sidecar second: a crash in between leaves an
        // unlisted blob file, never a listed-but-missing one.
        if (!write_file_atomic(blob_path(name), bytes) ||
            !write_file_atomic(meta_path(name), to_bytes(meta)))
            throw StorageFailure("cannot write blob: " + name);
        return obj;
    }

    Bytes get(const std::string& name) override {
        require_valid_name(name);
        std::lock_guard lock(mutex_);
        if (!std::filesystem::exists(meta_path(name)))
            throw NotFound("no such object: " + name);
        auto data = try_read_file(blob_path(name));
        if (!data) throw NotFound("no such object: " + name);
        return *data;
    }

    std::vector<RemoteObject> list() override {
        std::lock_guard lock(mutex_);
        std::vector<RemoteObject> out;
        for (const auto& entry : std::filesystem::directory_iterator(root_)) {
            if (entry.path().extension() != ".meta") continue;
            auto data = try_read_file(entry.path());
            if (!data) continue;
            std::istringstream fields(to_string(*data));
            RemoteObject obj;
            std::string size_str;
            if (!std::getline(fields, obj.name, '\t') ||
                !std::getline(fields, size_str, '\t') ||
                !std::getline(fields, obj.modified_at))
                throw StorageFailure("corrupt sidecar: " + entry.path().string());
            try {
                obj.size = std::stoull(size_str);
            } catch (const std::exception&) {
                throw StorageFailure("corrupt sidecar: " + entry.path().string());
            }
            out.push_back(std::move(obj));
        }
        std::sort(out.begin(), out.end(),
                  [](const RemoteObject& a, const RemoteObject& b) {
                      return a.name < b.name;
                  });
        return out;
    }

    void remove(const std::string& name) override {
        require_valid_name(name);
        std::lock_guard lock(mutex_);
        if (!std::filesystem::exists(meta_path(name)))
            throw NotFound("no such object: " + name);
        std::error_code ec;
        std::filesystem::remove(meta_path(name), ec);
        std::filesystem::remove(blob_path(name), ec);
    }

    const std::filesystem::path& root() const { return root_; }

private:
    std::string hashed_stem(const std::string& name) const {
        return hex_encode(sha256(to_bytes(name))).substr(0, 32);
    }
    std::filesystem::path blob_path(const std::string& name) const {
        return root_ / (hashed_stem(name) + ".blob");
    }
    std::filesystem::path meta_path(const std::string& name) const {
        return root_ / (hashed_stem(name) + ".meta");
    }

    std::filesystem::path root_;
    std::uint64_t max_blob_size_;
    std::mutex mutex_;
};

} // namespace vaultdrop
