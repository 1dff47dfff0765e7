#pragma once

#include <stdexcept>
#include <string>

namespace slnc {

// Base of every error raised by the library. The CLI maps the subclasses
// onto exit codes (input errors -> 2, field-size failures -> 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad file, inconsistent shapes, mismatched fields.
class InputError : public Error {
public:
    using Error::Error;
};

class FieldMismatch : public InputError {
public:
    FieldMismatch() : InputError("operands belong to different fields") {}
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

class NetworkError : public InputError {
public:
    using InputError::InputError;
};

// A construction precondition does not hold (e.g. the input code is not
// secure at the claimed level, or the base code is not decodable).
class PreconditionFailed : public InputError {
public:
    using InputError::InputError;
};

// The field is too small: either an a-priori size guard failed or a
// deterministic search ran out of candidates.
class FieldTooSmall : public Error {
public:
    using Error::Error;
};

// A produced code failed its own verification.
class VerificationFailed : public Error {
public:
    using Error::Error;
};

// Exhaustive enumeration would exceed its budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace slnc
