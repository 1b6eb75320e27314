#pragma once

// Initial and lateral traces of space-time fields, the extension of initial
// data by the evolution of the flux, and a canonical splitting u = u1 + u2
// into a part with vanishing initial values and a part continuous in time.

#include <array>
#include <cstdint>
#include <vector>

#include "halfwave/flux.hpp"
#include "halfwave/grid.hpp"

namespace halfwave {

/// Function of x on the space grid (L2 initial datum).
struct InitialDatum {
    Grid1D space;
    std::vector<double> values;

    double l2_norm() const;  ///< trapezoid rule
};

struct XDecomposition {
    SampledField2D u1;  ///< zero at t = 0 in the Hardy sense
    SampledField2D u2;  ///< continuous in time with values in L2
    double u1_norm = 0.0;
    double u2_norm = 0.0;
    double norm_upper = 0.0;  ///< u1_norm + u2_norm
};

/// Norms used by the decomposition:
///   u1: ||u||_p + ||u_x||_p + sqrt(Gagliardo + Hardy)
///   u2: ||u||_p + ||u_x||_p + sqrt(Gagliardo) + sup_t ||u(t)||_2
///       + ||u_t||_{L^p'(W^-1,p')}
double b_zero_norm(const SampledField2D& u1, double p);
double b_initial_norm(const SampledField2D& u2, double p);

/// Discrete L^p'(0, T; W^-1,p'(Omega)) norm of the backward time difference.
/// In one space dimension the W^-1,p' norm of v is min_c ||V + c||_p',
/// V a primitive of v.
double time_derivative_dual_norm(const SampledField2D& u, double p);

/// Pairs (u1, u2) and fills in the norms.
XDecomposition make_decomposition(SampledField2D u1, SampledField2D u2, double p);

/// u2 at t = 0.
InitialDatum trace_initial(const XDecomposition& d);

struct ExtendOptions {
    /// Residual tolerance relative to max(1, ||u0||_2).
    double rel_tol = 1e-10;
    int max_iter = 200;
};

/// Solves u_t - (A(x, t, u_x))_x = 0, u(., 0) = u0 (wall values of u0 set to
/// zero), u = 0 on the walls, by writing u = w + U0 with
/// U0(x, t) = u0(x) eta(t), eta = 1 on [0, 1] and 0 from t = 2 on.
SampledField2D extend_initial(const InitialDatum& u0, const StructuralFlux& flux,
                              const SpaceTimeGrid& grid, const ExtendOptions& opts = {});

/// Initial slice of u: Richardson extrapolation to h = 0 of the means of u
/// over (0, h), h = 2, 4, 8, 16 dt. On the first cell the interpolant of the
/// nodes at dt and 2 dt is used, so the raw t = 0 row does not enter.
InitialDatum initial_slice(const SampledField2D& u);

/// u2 = extend_initial(initial_slice(u)), u1 = u - u2.
XDecomposition x_norm_upper(const SampledField2D& u, const StructuralFlux& flux,
                            const ExtendOptions& opts = {});

enum class HardyVerdict { Zero, Vanishes, Diverges };

struct HardyVanishing {
    /// Space-integrated Hardy term at time steps 4 dt, 2 dt, dt.
    std::array<double, 3> levels{};
    /// Increase per halving of dt at the finest step.
    double growth = 0.0;
    /// (finest increase) / (coarser increase); near 1 for logarithmic growth.
    double growth_ratio = 0.0;
    HardyVerdict verdict = HardyVerdict::Zero;

    double value() const noexcept { return levels[2]; }
};

/// Needs n >= 9. Time levels use every 4th, every 2nd and every node up to
/// the largest common end time.
HardyVanishing hardy_vanishing_check(const SampledField2D& u);

struct MultiplierOptions {
    /// Zero padding in time, in time units, that absorbs the decaying tail of
    /// the causal kernel before it wraps around.
    double time_pad = 40.0;
    /// Space extent of the zero extension, as a multiple of m.
    std::size_t space_pad_factor = 2;
    double decay_tol = 1e-8;
};

/// (1 + D_t + 4 pi^2 |xi|^2)^-s on the 2-D DFT, D_t the backward difference
/// with symbol (1 - exp(-i 2 pi tau dt))/dt. Its kernel is causal in time, so
/// forward support is kept. u is extended by zero outside the space interval.
/// Throws DecayViolation if the last time column does not decay.
SampledField2D lateral_trace_multiplier(const SampledField2D& u, double s,
                                        const MultiplierOptions& opts = {});

/// Share of sum v^2 lying strictly before the first time index where `ref`
/// is nonzero.
double leaked_mass_fraction(const SampledField2D& ref, const SampledField2D& v);

struct LateralTrace {
    SampledFunction1D left;
    SampledFunction1D right;
    /// Quarter-order double integrals, kernel |s - t|^(-3/2), over R_+.
    double left_seminorm_sq = 0.0;
    double right_seminorm_sq = 0.0;
};

/// Wall traces by linear extrapolation 2 u_1 - u_2 from the two nearest
/// interior nodes. Throws Unsupported for p != 2.
LateralTrace lateral_trace_p2(const SampledField2D& u, double p = 2.0);
/// Same for the u1 part of a decomposition.
LateralTrace lateral_trace_p2(const XDecomposition& d, double p = 2.0);

}  // namespace halfwave
