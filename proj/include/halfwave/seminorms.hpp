#pragma once

// Quadratures for the norms of the half-time-derivative spaces: Gagliardo
// double integrals, the Hardy term at t = 0, mean oscillation, the cut-off
// and extension operators, and the space-time field versions of all of them.

#include <limits>
#include <utility>

#include "halfwave/grid.hpp"

namespace halfwave {

/// FullLine: the samples represent a function on R that vanishes outside the
/// grid cells [t_min - dt/2, t_max + dt/2].
/// HalfLine: the grid starts at t = 0 and the integrals run over R_+ x R_+;
/// the function is taken as zero beyond t_max + dt/2.
enum class LineDomain { FullLine, HalfLine };

/// Double integral of |u(s) - u(t)|^2 / |s - t|^(1 + 2 sigma) over the domain,
/// 0 < sigma < 1. The band |s - t| < dt/2 is excluded; the part of the domain
/// outside the grid, where u = 0, is integrated exactly.
double fractional_seminorm_sq(const SampledFunction1D& u, double sigma, LineDomain domain);

/// The sigma = 1/2 case: kernel 1/(s - t)^2, equal to
/// 2 pi ||D_-^{1/2} u||^2 on the full line.
double gagliardo_seminorm_sq(const SampledFunction1D& u, LineDomain domain);

struct HardyTerm {
    double value = 0.0;
    /// value exceeded the cap given to hardy_term.
    bool divergent = false;
};

/// Integral of u^2(t)/t over the half-line grid (t_min must be 0). The first
/// cell [0, dt] uses the midpoint rule with u(dt/2) = (u_0 + u_1)/2, the rest
/// the trapezoid rule.
HardyTerm hardy_term(const SampledFunction1D& u,
                     double cap = std::numeric_limits<double>::infinity());

/// Mean of the piecewise-linear interpolant of u over [a, b].
double interval_mean(const SampledFunction1D& u, double a, double b);

struct VmoDefect {
    double lhs = 0.0;  ///< (1/|I|) int_I |u - u_I|^2
    double rhs = 0.0;  ///< int_I int_I |u(s) - u(t)|^2 / (s - t)^2
};

/// Both sides of the mean-oscillation bound on I = [a, b] inside the grid.
VmoDefect vmo_defect(const SampledFunction1D& u, std::pair<double, double> interval);

/// chi_n (u - u_{I_n}) with chi_n = 1 on (-n, n), 0 outside (-2n, 2n),
/// affine in between, I_n = (-2n, 2n). Throws ScaleTooLarge if I_n is not
/// inside the grid.
SampledFunction1D cutoff(const SampledFunction1D& u, double n_scale);

/// E_S u (t) = u(|t|) on [-t_max, t_max].
SampledFunction1D extend_symmetric(const SampledFunction1D& u);
/// E_0 u: u on t >= 0, zero on t < 0, on [-t_max, t_max].
SampledFunction1D extend_zero(const SampledFunction1D& u);

/// ||D_-^{1/2} u||_2 + ||u||_p for a function on the line (spectral route).
double b_half_norm(const SampledFunction1D& u, double p);

// ---------------------------------------------------------------------------
// Space-time fields

/// Sum over space nodes of (trapezoid weight) x (row seminorm in time).
double field_gagliardo_sq(const SampledField2D& u, LineDomain time_domain = LineDomain::HalfLine);

/// Space-integrated Hardy term  int int u^2/t dx dt.
double field_hardy_sq(const SampledField2D& u);

/// (int int |u|^p dx dt)^(1/p).
double field_lp_norm(const SampledField2D& u, double p);

/// (int int |du/dx|^p dx dt)^(1/p), centred differences inside, one-sided at
/// the walls.
double field_grad_lp_norm(const SampledField2D& u, double p);

/// sup_t ||u(., t)||_{L2(Omega)}.
double field_sup_l2(const SampledField2D& u);

enum class FieldSpace {
    BDotZero,   ///< zero initial data: adds the Hardy term
    BDotDot,    ///< no initial condition
    BIPartial,  ///< B_{0,.} parts plus sup_t ||u(t)||_2
};

struct NormReport {
    static constexpr double absent = std::numeric_limits<double>::quiet_NaN();

    double lp_norm = absent;
    double gagliardo_sq = absent;
    double hardy_sq = absent;
    double grad_lp = absent;
    double sup_l2 = absent;
    double p = absent;

    static bool present(double v) { return v == v; }

    /// ||u||_p + ||grad u||_p + sqrt(hardy + gagliardo), absent terms skipped.
    double total() const;
};

/// Throws InvalidArgument for p <= 1.
NormReport field_norm_report(const SampledField2D& u, double p, FieldSpace space);

}  // namespace halfwave
