#pragma once

// Variational solvers.
//
// model_operator_solve: T(u) = D u + |u|^(p-2) u = f on a line grid, D the
// first-order causal difference (GL weights of order 1).
//
// solve_homogeneous / solve_nonhomogeneous: the weak p-parabolic problem
//   sum_i dx dt v_ij (M_1 u_i)_j + sum_cells dt A(x, t, u_x) v_x dx = <source, v>
// on a space-time grid, for every interior test node. M_1 is the first-order
// GL matrix, equal to M_1/2 M_1/2, so the time pairing is the half/half form
// sum (M_1/2 u)(M_1/2^T v). Walls and the t = 0 column are pinned to the
// datum g. Fluxes live at cell midpoints.

#include <cstdint>
#include <optional>
#include <vector>

#include "halfwave/flux.hpp"
#include "halfwave/grid.hpp"

namespace halfwave {

// ---------------------------------------------------------------------------
// Model operator on the line

struct ModelSolveOptions {
    int max_iter = 200;
    /// A_eps(u) = (eps^2 + u^2)^((p-2)/2) u with eps = eps_scale * max(1, max|f|).
    double eps_scale = 1e-8;
};

/// Causal first difference (u_j - u_{j-1})/dt with u_{-1} = 0, plus |u|^(p-2) u.
SampledFunction1D model_operator_apply(const SampledFunction1D& u, double p);

/// Solves T(u) = f to ||T(u) - f||_2 <= tol (the L2 norm bounds the dual norm
/// of the residual from above). Throws NonConvergence.
SampledFunction1D model_operator_solve(const SampledFunction1D& f, double p, double tol,
                                       const ModelSolveOptions& opts = {});

// ---------------------------------------------------------------------------
// Time form

/// The space-time pairing B(u, v) = sum_i dx dt v_i^T M_1 u_i with its
/// half-order factorization.
class TimeForm {
public:
    explicit TimeForm(const SpaceTimeGrid& grid);

    const SpaceTimeGrid& grid() const noexcept { return grid_; }

    /// Row-wise M_1 u (causal first difference, zero before t_min).
    SampledField2D apply_first(const SampledField2D& u) const;
    /// Row-wise M_1/2 u (forward half order).
    SampledField2D apply_half(const SampledField2D& u) const;
    /// Row-wise M_1/2^T v (backward half order).
    SampledField2D apply_half_adjoint(const SampledField2D& v) const;

    /// sum dx dt v (M_1 u).
    double pairing_first(const SampledField2D& u, const SampledField2D& v) const;
    /// sum dx dt (M_1/2 u)(M_1/2^T v).
    double pairing_half(const SampledField2D& u, const SampledField2D& v) const;

private:
    SpaceTimeGrid grid_;
    std::vector<double> half_weights_;  // scaled by dt^-1/2
};

TimeForm assemble_time_form(const SpaceTimeGrid& grid);

// ---------------------------------------------------------------------------
// Weak problems

struct SourceData {
    /// Half-derivative component: contributes <M_1/2 u0, v>.
    SampledField2D u0;
    /// Divergence components (one per space dimension, at most one here):
    /// contribute -<u_1, v_x>.
    std::vector<SampledField2D> ui;
    /// Pointwise load, contributes <f_pt, v>.
    std::optional<SampledField2D> f_pt;

    static SourceData zero(const SpaceTimeGrid& grid);
    static SourceData pointwise(SampledField2D f);
};

struct WeakProblem {
    SpaceTimeGrid grid;
    StructuralFlux flux;
    SourceData source;
    /// Datum on the walls and at t = 0; also the default initial iterate.
    SampledField2D g;
    double tol = 1e-8;
    int max_iter = 200;
};

struct SolveResult {
    SampledField2D u;
    int iterations = 0;
    /// Dual norm of the residual of the unregularized flux.
    double residual_dual_norm = 0.0;
    /// Same for the flux actually iterated (differs only when p != 2).
    double regularized_residual = 0.0;
    /// 1/2 ||R||_*^2 after each accepted step, starting with the initial iterate.
    std::vector<double> energy_trace;
    /// Iteration index at which Newton steps took over (-1 if never).
    int newton_from = -1;
    double eps = 0.0;
};

struct SolverOptions {
    /// Start iterate for the interior; the boundary is always taken from g.
    std::optional<SampledField2D> initial;
    /// Samples in the pre-solve flux audit (0 disables it).
    std::size_t audit_samples = 4096;
    std::uint64_t audit_seed = 0x5eed;
    /// Picard phase ends once ||R|| <= switch_ratio ||R_0||.
    double switch_ratio = 1e-2;
    double eps_scale = 1e-8;
};

/// g must vanish identically. Throws FluxAuditFailure, NonConvergence.
SolveResult solve_homogeneous(const WeakProblem& prob, const SolverOptions& opts = {});

/// u = w + g with w zero on the walls and at t = 0.
SolveResult solve_nonhomogeneous(const WeakProblem& prob, const SolverOptions& opts = {});

/// Weak residual R_ij at interior nodes (zero elsewhere) for the given flux.
SampledField2D weak_residual(const WeakProblem& prob, const StructuralFlux& flux,
                             const SampledField2D& u);

/// sqrt(sum_j r_j^T (dt (dx I + K))^-1 r_j), K the Dirichlet stiffness matrix:
/// the norm of r as a functional on L2(0, T; H^1_0).
double residual_dual_norm(const SampledField2D& r);

/// Solves from `trials` random initial iterates; returns the largest pairwise
/// L2 distance between the results.
double uniqueness_probe(const WeakProblem& prob, int trials, std::uint64_t seed = 1);

}  // namespace halfwave
