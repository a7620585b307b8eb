#pragma once

#include <stdexcept>
#include <string>

namespace volswap {

// Invalid or inconsistent user input (parameters, contract, run config).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A transform/expectation does not exist for the requested argument.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// The Riccati path left the admissibility strip of the jump transform.
struct AdmissibilityError : std::runtime_error {
    explicit AdmissibilityError(const std::string& what) : std::runtime_error(what) {}
};

// ODE step size underflow, Riccati pole, or other integrator failure.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A frequency/Laplace integral failed to converge within its truncation bound.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace volswap
