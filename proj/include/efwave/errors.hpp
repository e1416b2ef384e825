#pragma once

#include <stdexcept>
#include <string>

namespace efwave {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad input: schema violations, invariant violations, mismatched grids.
/// The CLI maps these to exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

/// Numerical failure during an otherwise valid computation.
/// The CLI maps these to exit code 3.
struct NumericalError : Error {
    using Error::Error;
};

struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};

struct SingularMaterialError : NumericalError {
    using NumericalError::NumericalError;
};

struct EvanescentError : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateDispersionError : NumericalError {
    using NumericalError::NumericalError;
};

struct SingularityError : NumericalError {
    using NumericalError::NumericalError;
};

struct RangeError : ValidationError {
    using ValidationError::ValidationError;
};

struct TransferSingularityError : NumericalError {
    using NumericalError::NumericalError;
};

struct InstabilityError : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace efwave
