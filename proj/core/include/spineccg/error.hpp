#pragma once

#include <stdexcept>
#include <string>

namespace spineccg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (grammar files, tree syntax, category syntax).
class ParseError : public Error {
public:
    using Error::Error;
};

/// An object does not satisfy the precondition of an operation.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace spineccg
