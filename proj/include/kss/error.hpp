#pragma once

#include <stdexcept>
#include <string>

namespace kss {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Field or grid shapes do not agree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A precondition on numeric arguments (counts, exponents, extents) failed.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Explicit transport step would violate its stability bound; the step is refused.
class CflViolation : public Error {
public:
    CflViolation(const std::string& what, double cfl) : Error(what), cfl_(cfl) {}
    double cfl() const { return cfl_; }

private:
    double cfl_;
};

/// Iterative linear solve did not reach its tolerance within the iteration cap.
class SolverDivergence : public Error {
public:
    SolverDivergence(const std::string& what, int iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}
    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace kss
