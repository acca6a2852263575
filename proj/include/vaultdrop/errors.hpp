#pragma once

#include <stdexcept>
#include <string>

namespace vaultdrop {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- crypto primitives ---

class InvalidKeyLength : public Error {
public:
    using Error::Error;
};

class InvalidBlockLength : public Error {
public:
    using Error::Error;
};

class InvalidIvLength : public Error {
public:
    using Error::Error;
};

class InvalidCiphertextLength : public Error {
public:
    using Error::Error;
};

class PaddingError : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class EntropyUnavailable : public Error {
public:
    using Error::Error;
};

// --- envelope ---

/// Password verifier in the envelope header does not match the entered
/// password. The container is intact; the password is wrong.
class PasswordInvalid : public Error {
public:
    using Error::Error;
};

/// The password checks out but the MAC (or padding) does not: the
/// ciphertext or header was modified after sealing.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// Malformed container: bad magic, unknown version, truncation,
/// inconsistent lengths.
class FormatError : public Error {
public:
    using Error::Error;
};

// --- auth ---

class UserExists : public Error {
public:
    using Error::Error;
};

class WeakPassword : public Error {
public:
    using Error::Error;
};

class AuthenticationError : public Error {
public:
    using Error::Error;
};

class TokenInvalid : public Error {
public:
    using Error::Error;
};

class StorageFailure : public Error {
public:
    using Error::Error;
};

// --- storage backends ---

class NotFound : public Error {
public:
    using Error::Error;
};

class NameInvalid : public Error {
public:
    using Error::Error;
};

class AuthRequired : public Error {
public:
    using Error::Error;
};

class ConnectionFailure : public Error {
public:
    using Error::Error;
};

// --- workflows ---

class FileUnreadable : public Error {
public:
    using Error::Error;
};

class DestinationExists : public Error {
public:
    using Error::Error;
};

// --- service ---

class BindFailure : public Error {
public:
    using Error::Error;
};

class DataDirUnavailable : public Error {
public:
    using Error::Error;
};

} // namespace vaultdrop
