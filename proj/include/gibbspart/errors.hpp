#pragma once

#include <stdexcept>
#include <string>

namespace gibbspart {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid model or operation parameters (domain violations).
struct ParamError : Error {
    using Error::Error;
};

// Mismatched vector/matrix shapes (e.g. multiplicities not summing to n).
struct ShapeError : Error {
    using Error::Error;
};

// Index outside the stated validity range of an identity or table.
struct RangeError : Error {
    using Error::Error;
};

// Gamma function evaluated at a non-positive integer.
struct PoleError : Error {
    using Error::Error;
};

// Integration region of an incomplete Dirichlet integral is empty.
struct EmptyDomainError : Error {
    using Error::Error;
};

// A series or iteration hit its cap before meeting the tail bound.
struct NonConvergenceError : Error {
    using Error::Error;
};

// A quadrature or extrapolation could not certify the requested tolerance.
struct ToleranceError : Error {
    using Error::Error;
};

// A probability vector failed its normalization check.
struct NormalizationError : Error {
    using Error::Error;
};

// A root finder failed to converge.
struct ConvergenceError : Error {
    using Error::Error;
};

// A model cannot support the requested operation (e.g. sampling with
// signed weights).
struct ModelError : Error {
    using Error::Error;
};

} // namespace gibbspart
