#pragma once

// The two user-facing flows, composed from the envelope and a storage
// backend. Ordering is load-bearing in both:
//
// upload:   read file -> seal under fresh salt/iv -> put -> only then
//           delete the original (when asked to). A failed put never
//           costs the caller their file.
// download: fetch -> decode -> validate password (no decryption yet) ->
//           open -> write destination durably -> only then delete the
//           remote copy (when asked to). A wrong password changes
//           nothing anywhere.

#include <filesystem>

#include "vaultdrop/envelope.hpp"
#include "vaultdrop/random.hpp"
#include "vaultdrop/storage.hpp"

namespace vaultdrop {

struct UploadRequest {
    std::filesystem::path local_path;
    std::string remote_name; // empty = basename + ".esf"
    Bytes encryption_password;
    bool delete_original = false;
    std::uint32_t iterations = kDefaultIterations;
};

struct DownloadRequest {
    std::string remote_name;
    Bytes encryption_password;
    std::filesystem::path dest_path;
    bool delete_remote = false;
};

inline std::string default_remote_name(const std::filesystem::path& local_path) {
    return local_path.filename().string() + ".esf";
}

inline RemoteObject upload_file(StorageBackend& backend, const UploadRequest& request) {
    auto plaintext = try_read_file(request.local_path);
    if (!plaintext)
        throw FileUnreadable("cannot read file: " + request.local_path.string());

    const std::string name = request.remote_name.empty()
                                 ? default_remote_name(request.local_path)
                                 : request.remote_name;

    Envelope env = seal(*plaintext, request.encryption_password,
                        request.iterations, random_bytes(kSaltSize),
                        random_bytes(kIvSize));
    RemoteObject obj = backend.put(name, encode(env));

    if (request.delete_original) {
        // Only after the backend acknowledged the put.
        std::error_code ec;
        std::filesystem::remove(request.local_path, ec);
        if (ec)
            throw StorageFailure("uploaded, but cannot delete original: " +
                                 request.local_path.string());
    }
    return obj;
}

inline std::filesystem::path download_file(StorageBackend& backend,
                                           const DownloadRequest& request) {
    if (std::filesystem::exists(request.dest_path))
        throw DestinationExists("refusing to overwrite: " +
                                request.dest_path.string());

    Bytes raw = backend.get(request.remote_name);
    Envelope env = decode(raw);

    // Reject a wrong password before any decryption work; the remote
    // object and the destination stay untouched.
    if (!verify_password(env, request.encryption_password))
        throw PasswordInvalid("password rejected: verifier mismatch");

    Bytes plaintext = open(env, request.encryption_password);

    if (!write_file_atomic(request.dest_path, plaintext))
        throw StorageFailure("cannot write destination: " +
                             request.dest_path.string());

    if (request.delete_remote) {
        // Only after the plaintext is durably on disk.
        backend.remove(request.remote_name);
    }
    return request.dest_path;
}

inline std::vector<RemoteObject> list_remote(StorageBackend& backend) {
    return backend.list();
}

} // namespace vaultdrop
