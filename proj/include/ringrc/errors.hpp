#pragma once

#include <stdexcept>
#include <string>

namespace ringrc {

/// Base class for every error raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration (maps to CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Timing grid of the reservoir does not align with the integrator step.
class ConfigMismatch : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Numerical failure during a simulation (maps to CLI exit code 3).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A state variable became NaN or Inf.
class NonFinite : public NumericalError {
public:
    NonFinite(const std::string& what, double time_s)
        : NumericalError(what), time_s_(time_s) {}

    double time_s() const noexcept { return time_s_; }

private:
    double time_s_;
};

class BiasTooSmall : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// The NARMA-10 recurrence blew up for the drawn input sequence.
class Diverged : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class ConstantTarget : public Error {
public:
    using Error::Error;
};

}  // namespace ringrc
