#pragma once

// Fluxes A(x, t, xi) of p-parabolic equations together with their structural
// constants, and a randomized audit of the monotonicity, coercivity and
// growth conditions
//   (A(xi) - A(eta), xi - eta) > 0          for xi != eta
//   (A(xi), xi) >= lambda |xi|^p - h(x, t)
//   |A(xi)| <= Lambda |xi|^(p-1) + H(x, t).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace halfwave {

struct StructuralFlux {
    using Eval = std::function<void(double x, double t, std::span<const double> xi,
                                    std::span<double> out)>;
    /// d A_i / d xi_j, row-major dim x dim.
    using Jacobian = std::function<void(double x, double t, std::span<const double> xi,
                                        std::span<double> jac)>;
    using Bound = std::function<double(double x, double t)>;

    std::string name;
    double p = 2.0;
    double lambda = 1.0;
    double Lambda = 1.0;
    /// Fixed vector dimension, or 0 if the flux works in any dimension.
    std::size_t dim = 0;
    Eval eval;
    Jacobian jacobian;  ///< optional; finite differences are used when empty
    Bound h_bound;
    Bound H_bound;
    /// Smoothed version used by the solver near degenerate or singular
    /// points (p != 2); empty when the flux is already smooth.
    std::function<StructuralFlux(double eps)> regularize;

    /// Throws InvalidArgument if p <= 1, lambda <= 0, Lambda < lambda or a
    /// callable is missing.
    void validate() const;

    /// Scalar (one space dimension) evaluation.
    double operator()(double x, double t, double xi) const;
    /// dA/dxi in one space dimension.
    double slope(double x, double t, double xi) const;
};

/// |xi|^(p-2) xi, lambda = Lambda = 1, h = H = 0. A(0) = 0 for every p.
StructuralFlux p_laplacian_flux(double p);

/// (eps^2 + |xi|^2)^((p-2)/2) xi: smooth and strictly monotone for eps > 0.
StructuralFlux regularized_p_laplacian_flux(double p, double eps);

/// a(x, t) |xi|^(p-2) xi with a_min <= a <= a_max.
StructuralFlux weighted_p_laplacian_flux(double p, std::function<double(double, double)> a,
                                         double a_min, double a_max);

/// M xi for a symmetric positive definite dim x dim matrix (row-major);
/// p = 2, lambda and Lambda the extreme eigenvalues.
StructuralFlux linear_flux(std::vector<double> matrix, std::size_t dim);

/// -xi. Anti-monotone, used to check that the audit fails.
StructuralFlux broken_flux();

/// xi -> A(x, t, xi + g(x, t)) with constants adjusted so that the three
/// conditions keep holding:
///   lambda' = 2^-p lambda,
///   h' = h + H|g| + Lambda^p |g|^p / (p delta^(p-1)) + lambda |g|^p / 2,
///        delta = lambda p / (2 (p - 1)),
///   Lambda' = max(1, 2^(p-2)) Lambda,  H' = H + Lambda' |g|^(p-1).
/// `g` writes the shift vector for (x, t) into its last argument.
StructuralFlux shifted_flux(const StructuralFlux& a, std::size_t dim,
                            std::function<void(double, double, std::span<double>)> g);

/// Builds a shipped flux by name: "p_laplacian", "regularized_p_laplacian"
/// (needs eps), "broken". Throws InvalidArgument for unknown names.
StructuralFlux flux_by_name(const std::string& name, double p, double eps = 0.0);

struct FluxAuditReport {
    std::size_t monotonicity_violations = 0;
    std::size_t coercivity_violations = 0;
    std::size_t boundedness_violations = 0;
    /// Pairs with 0 < (A(xi) - A(eta), xi - eta) <= 1e-14 |xi - eta|^2; not violations.
    std::size_t weak_monotonicity = 0;
    /// Points where a relative step of 1e-9 in xi moved A by more than 1e-4 (relative).
    std::size_t continuity_flags = 0;
    std::size_t samples = 0;

    bool passed() const noexcept {
        return monotonicity_violations == 0 && coercivity_violations == 0 &&
               boundedness_violations == 0;
    }
};

struct AuditOptions {
    /// Vector dimension for fluxes with dim == 0.
    std::size_t dim = 2;
    double x_min = 0.0, x_max = 1.0;
    double t_min = 0.0, t_max = 10.0;
    /// |xi| is drawn log-uniformly from [10^log_mag_min, 10^log_mag_max].
    double log_mag_min = -3.0, log_mag_max = 2.0;
};

/// Draws `samples` tuples (x, t, xi, eta) and counts violations. Samples are
/// split into fixed batches, each with its own generator seeded from
/// (seed, batch index), so the report does not depend on the thread count.
FluxAuditReport audit_flux(const StructuralFlux& a, std::uint64_t seed, std::size_t samples,
                           const AuditOptions& opts = {});

}  // namespace halfwave
