#pragma once

#include <stdexcept>
#include <string>

namespace apb {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands built over different variable sets.
class RingMismatchError : public Error {
public:
    using Error::Error;
};

/// A variable name that is not part of the ring, or is missing from an assignment.
class VariableError : public Error {
public:
    using Error::Error;
};

/// Mathematical domain violation: division by zero, poles, invalid kernels, non-units.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A request that reads past the truncation order, or an operator too short to act exactly.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Malformed request from a caller: unknown selector, family name or flag value.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace apb
