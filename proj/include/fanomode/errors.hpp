// errors.hpp: exception hierarchy shared by all fanomode modules

#pragma once

#include <stdexcept>
#include <string>

namespace fanomode {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite or out-of-range physical parameters.
struct ParameterError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of a function (e.g. tau < 0).
struct DomainError : Error {
    using Error::Error;
};

// Residue factorization does not reproduce the pole residue.
struct InconsistencyError : Error {
    InconsistencyError(const std::string& what, double residual)
        : Error(what), residual(residual) {}
    double residual;
};

// Integrator step too coarse for the kernel scale.
struct StepSizeError : Error {
    using Error::Error;
};

// Spectral function negative where a coupling must be built from it.
struct SpectralError : Error {
    using Error::Error;
};

// Request outside the regime where a construction is valid (e.g. eta != 1).
struct UnsupportedRegimeError : Error {
    using Error::Error;
};

// Invalid user-supplied state or configuration.
struct InputError : Error {
    using Error::Error;
};

// Time horizon beyond what a finite reservoir can represent.
struct RecurrenceError : Error {
    using Error::Error;
};

} // namespace fanomode
