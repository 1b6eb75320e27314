#pragma once

// Problems with known solutions, shared by the CLI and the verification
// suites, and a refinement-sweep driver.

#include <functional>
#include <vector>

#include "halfwave/solver.hpp"

namespace halfwave {

struct ManufacturedCase {
    WeakProblem problem;
    SampledField2D exact;
};

using FieldFn = std::function<double(double, double)>;

/// u* = sin(pi x)(1 - e^-t) e^(-t/2), p = 2, pointwise source u*_t - u*_xx.
ManufacturedCase heat_manufactured(const SpaceTimeGrid& grid, double tol);

/// u* = g = e^(-pi^2 t) sin(pi x), p = 2, no source.
ManufacturedCase heat_separable(const SpaceTimeGrid& grid, double tol);

/// u* = sin(pi x) t e^-t with the p-Laplacian flux and the source
/// u*_t - (p-1)|u*_x|^(p-2) u*_xx. Needs p >= 2 (the source is unbounded
/// where u*_x = 0 when p < 2).
ManufacturedCase p_laplacian_manufactured(const SpaceTimeGrid& grid, double p, double tol);

/// Source = discrete weak operator applied to u*, so u* sampled on the grid
/// is the exact discrete solution. g = u* on the walls and at t = 0.
ManufacturedCase discrete_manufactured(const SpaceTimeGrid& grid, const StructuralFlux& flux,
                                       const FieldFn& u_star, double tol);

struct SweepLevel {
    std::size_t m = 0, n = 0;
    double dx = 0.0, dt = 0.0;
    double max_error = 0.0;
    double l2_error = 0.0;
    int iterations = 0;
};

struct SweepSpec {
    double x_min = 0.0, x_max = 1.0, t_max = 1.0;
    std::size_t m0 = 17, n0 = 17;
    /// Interval counts are multiplied by these factors per level.
    std::size_t space_factor = 2, time_factor = 4;
    int levels = 3;
};

/// Solves the case built for every level and records errors against the exact field.
std::vector<SweepLevel> refinement_sweep(const SweepSpec& spec,
                                         const std::function<ManufacturedCase(const SpaceTimeGrid&)>& build);

/// log(e_coarse/e_fine)/log(ratio).
double observed_order(double e_coarse, double e_fine, double ratio);

}  // namespace halfwave
