#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zcp2 {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different truncated rings F_p[l]/(l^m).
class MismatchedRing : public Error {
public:
    using Error::Error;
};

class NonUnit : public Error {
public:
    using Error::Error;
};

class UnsupportedPrime : public Error {
public:
    using Error::Error;
};

/// Built-in data is incomplete for this prime; a class-data file is required.
class NeedsConfig : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed the configured element guard.
class SizeGuard : public Error {
public:
    using Error::Error;
};

/// Loaded data violates a structural invariant; `path()` names the offending field.
class InvariantViolation : public Error {
public:
    InvariantViolation(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Descriptor text rejected by the parser; `position()` is a byte offset.
class ParseError : public Error {
public:
    ParseError(std::size_t pos, const std::string& what)
        : Error("at " + std::to_string(pos) + ": " + what), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

class NotFaithful : public Error {
public:
    using Error::Error;
};

class NontrivialClass : public Error {
public:
    using Error::Error;
};

class MismatchedContext : public Error {
public:
    using Error::Error;
};

}  // namespace zcp2
