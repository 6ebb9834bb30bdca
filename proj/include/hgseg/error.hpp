#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hgseg {

/// Base class of every error thrown by the library. `kind()` is a short
/// machine-readable class name used by the command-line tool.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

class InvalidInput : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid-input"; }
};

class NoPath : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "no-path"; }
};

class UnsupportedTopology : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "unsupported-topology"; }
};

class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "io"; }
};

/// Malformed image data. `offset()` is the byte position where decoding failed.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }
    const char* kind() const noexcept override { return "format"; }

private:
    std::size_t offset_;
};

}  // namespace hgseg
