#pragma once

#include <stdexcept>
#include <string>

namespace simcf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInvertible : Error {
    using Error::Error;
};

struct NotASquare : Error {
    using Error::Error;
};

struct NegativeInput : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

struct DomainMismatch : Error {
    using Error::Error;
};

struct ZeroElement : Error {
    using Error::Error;
};

struct PrecisionExhausted : Error {
    using Error::Error;
};

struct ZeroResidual : Error {
    using Error::Error;
};

struct NotPeriodic : Error {
    using Error::Error;
};

struct DegenerateEigenvalue : Error {
    using Error::Error;
};

struct ImaginaryFieldUnsupported : Error {
    using Error::Error;
};

// Parse errors carry the offset of the offending character.
struct SyntaxError : Error {
    size_t position;
    SyntaxError(const std::string& msg, size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct UnsatisfiableCongruence : Error {
    using Error::Error;
};

} // namespace simcf
