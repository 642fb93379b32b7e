#pragma once

#include <stdexcept>
#include <string>

namespace talbot {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent user-supplied configuration. CLI exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A material parameter makes the requested computation meaningless
/// (e.g. non-positive optical force constant).
class MaterialError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// The optimisation objective is identically zero, so no optimum exists;
/// the caller must supply a non-trivial reference collapse parameter.
class DegenerateObjectiveError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Numerical failure during evaluation (non-convergence, NaN, overflow,
/// infinite divergence). CLI exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Closed-form expression evaluated outside its domain of validity.
class FormulaDomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An internal cross-check failed (negative densities, tail not converged,
/// truncation not stabilised).
class ConsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Map an exception to the documented process exit code.
int exit_code_for(const std::exception& e);

} // namespace talbot
