#pragma once

#include <stdexcept>
#include <string>

namespace lrk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different rings, ranks or presentations.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Malformed text or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A mathematical precondition of an operation does not hold
/// (non-cocycle twist, wrong curvature type, operator order too high, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the accepted domain (bad index, n < 0, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A self-verification failed; indicates a bug rather than bad input.
class VerificationError : public Error {
public:
    using Error::Error;
};

}  // namespace lrk
