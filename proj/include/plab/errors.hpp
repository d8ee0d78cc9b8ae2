#pragma once

#include <stdexcept>
#include <string>

namespace plab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad argument values (counts, radii, schedules, caps).
struct ParameterError : Error {
    using Error::Error;
};

/// Operation applied to a set/measure of the wrong kind.
struct DomainError : Error {
    using Error::Error;
};

/// Malformed or inconsistent input file.
struct IngestionError : Error {
    using Error::Error;
};

/// Point cloud cannot support the requested polynomial space.
struct DegenerateSupportError : Error {
    using Error::Error;
};

/// Numerical breakdown attributable to basis conditioning.
struct ConditioningError : Error {
    using Error::Error;
};

/// Mesh too coarse for the requested Monge-Ampere discretization.
struct ResolutionError : Error {
    using Error::Error;
};

/// Fixed-point iteration failed to reach tolerance.
struct IterationError : Error {
    using Error::Error;
};

/// No closed-form oracle for the requested set/weight combination.
struct OracleUnavailableError : Error {
    using Error::Error;
};

/// Non-finite value met while evaluating sections or weights.
struct EvaluationError : Error {
    using Error::Error;
};

} // namespace plab
