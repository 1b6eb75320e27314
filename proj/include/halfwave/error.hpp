#pragma once

#include <stdexcept>
#include <string>

namespace halfwave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument (order, grid size, exponent) does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A sampled function does not decay at the ends of its grid, so a spectral
/// operator would be dominated by wrap-around.
class DecayViolation : public Error {
public:
    DecayViolation(const std::string& what, double boundary_ratio)
        : Error(what), boundary_ratio_(boundary_ratio) {}
    double boundary_ratio() const noexcept { return boundary_ratio_; }

private:
    double boundary_ratio_;
};

class ScaleTooLarge : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

class FluxAuditFailure : public Error {
public:
    using Error::Error;
};

/// Iterative solve stopped at max_iter (or stagnated) above tolerance.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double best_residual, int iterations)
        : Error(what), best_residual_(best_residual), iterations_(iterations) {}
    double best_residual() const noexcept { return best_residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double best_residual_;
    int iterations_;
};

}  // namespace halfwave
