#pragma once

#include <stdexcept>
#include <string>

namespace singdyn {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Polynomial not divisible by x1^2 + x2^2; carries the remainder norm.
class NotDivisibleError : public Error {
public:
    explicit NotDivisibleError(double residual)
        : Error("polynomial is not divisible by x^2 (remainder norm " +
                std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// A state entry became NaN/Inf during time integration (blow-up policy:
// stop and report).
class NonFiniteError : public Error {
public:
    explicit NonFiniteError(double t)
        : Error("state became non-finite at t = " + std::to_string(t)), t_(t) {}
    double when() const { return t_; }

private:
    double t_;
};

// |c1_0| fell below its admissibility threshold.
class DegenerateVortexError : public Error {
public:
    using Error::Error;
};

// a1 >= 0 somewhere on a heat-wave front (expansion requires a1 < 0).
class DegenerateExpansionError : public Error {
public:
    using Error::Error;
};

// |phi_x2| exceeded the graph threshold; the front needs a new chart.
class GraphLossError : public Error {
public:
    using Error::Error;
};

// Reference solver: degenerate support reached the grid boundary.
class BoundaryContactError : public Error {
public:
    using Error::Error;
};

// No level crossing found when extracting a front position.
class NoCrossingError : public Error {
public:
    using Error::Error;
};

// Invalid scenario configuration (maps to CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace singdyn
