#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arcjoin {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. `line` is 1-based for line-oriented formats,
// `byte` is the offset for byte-oriented ones; 0 means not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t byte = 0)
        : Error(what), line(line), byte(byte) {}

    std::size_t line;
    std::size_t byte;
};

// Well-formed input that violates a domain invariant (short polyline,
// non-positive width, bad threshold range, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Geometric precondition failure: degenerate vector, zero-length segment,
// near-reversal miter.
class GeometryError : public Error {
public:
    using Error::Error;
};

// Missing or unreadable/unwritable file.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace arcjoin
