#pragma once

#include <stdexcept>
#include <string>

namespace finsub {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text or parameters.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A structural invariant failed (simplicial identities, dd = 0, closure...).
class InvariantError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed the configured cell cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace finsub
