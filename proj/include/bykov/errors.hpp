#pragma once

#include <stdexcept>
#include <string>

namespace bykov {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter inequality does not hold; the message names it.
class ConstraintViolation : public Error {
public:
    using Error::Error;
};

/// Section point on a section boundary, on the invariant manifold, or non-finite.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// Flow evaluated past the exit time of the current cylinder.
class OutOfSojourn : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class NonConvergent : public Error {
public:
    using Error::Error;
};

class InvalidTimes : public Error {
public:
    using Error::Error;
};

/// The two systems handed to the conjugacy construction have different invariants.
class InvariantMismatch : public Error {
public:
    using Error::Error;
};

/// Malformed configuration; `path()` is a JSON path such as `$.params.a`.
class ParseError : public Error {
public:
    ParseError(std::string path, const std::string& what)
        : Error(what + " at " + path), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace bykov
