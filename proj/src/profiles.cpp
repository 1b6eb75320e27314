#include "halfwave/profiles.hpp"

#include <cmath>
#include <numbers>

#include "halfwave/error.hpp"
#include "halfwave/seminorms.hpp"

namespace halfwave {

namespace {

constexpr double kPi = std::numbers::pi;

// g equal to the exact field on the walls and at t = 0, zero inside.
SampledField2D boundary_of(const SampledField2D& exact) {
    auto g = SampledField2D::zeros(exact.grid);
    const std::size_t m = exact.grid.m(), n = exact.grid.n();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i == 0 || i + 1 == m || j == 0) g(i, j) = exact(i, j);
    return g;
}

}  // namespace

ManufacturedCase heat_manufactured(const SpaceTimeGrid& grid, double tol) {
    ManufacturedCase c;
    c.exact = SampledField2D::sample(grid, [](double x, double t) {
        return std::sin(kPi * x) * (1.0 - std::exp(-t)) * std::exp(-0.5 * t);
    });
    auto f = SampledField2D::sample(grid, [](double x, double t) {
        const double s = std::sin(kPi * x);
        const double a = (1.0 - std::exp(-t)) * std::exp(-0.5 * t);
        const double da = std::exp(-1.5 * t) - 0.5 * a;
        return s * da + kPi * kPi * s * a;
    });
    c.problem.grid = grid;
    c.problem.flux = p_laplacian_flux(2.0);
    c.problem.source = SourceData::pointwise(std::move(f));
    c.problem.g = boundary_of(c.exact);
    c.problem.tol = tol;
    return c;
}

ManufacturedCase heat_separable(const SpaceTimeGrid& grid, double tol) {
    ManufacturedCase c;
    c.exact = SampledField2D::sample(
        grid, [](double x, double t) { return std::exp(-kPi * kPi * t) * std::sin(kPi * x); });
    c.problem.grid = grid;
    c.problem.flux = p_laplacian_flux(2.0);
    c.problem.source = SourceData::zero(grid);
    c.problem.g = c.exact;
    c.problem.tol = tol;
    return c;
}

ManufacturedCase p_laplacian_manufactured(const SpaceTimeGrid& grid, double p, double tol) {
    if (!(p >= 2.0)) {
        throw InvalidArgument("the continuous manufactured source needs p >= 2");
    }
    ManufacturedCase c;
    c.exact = SampledField2D::sample(
        grid, [](double x, double t) { return std::sin(kPi * x) * t * std::exp(-t); });
    auto f = SampledField2D::sample(grid, [p](double x, double t) {
        const double a = t * std::exp(-t);
        const double da = (1.0 - t) * std::exp(-t);
        const double s = std::sin(kPi * x);
        const double ux = kPi * std::cos(kPi * x) * a;
        const double uxx = -kPi * kPi * s * a;
        const double g = ux == 0.0 ? (p == 2.0 ? 1.0 : 0.0) : std::pow(std::abs(ux), p - 2.0);
        return s * da - (p - 1.0) * g * uxx;
    });
    c.problem.grid = grid;
    c.problem.flux = p_laplacian_flux(p);
    c.problem.source = SourceData::pointwise(std::move(f));
    c.problem.g = boundary_of(c.exact);
    c.problem.tol = tol;
    return c;
}

ManufacturedCase discrete_manufactured(const SpaceTimeGrid& grid, const StructuralFlux& flux,
                                       const FieldFn& u_star, double tol) {
    ManufacturedCase c;
    c.exact = SampledField2D::sample(grid, u_star);
    c.problem.grid = grid;
    c.problem.flux = flux;
    c.problem.source = SourceData::zero(grid);
    c.problem.g = boundary_of(c.exact);
    c.problem.tol = tol;
    auto f = weak_residual(c.problem, flux, c.exact);
    const double cell = grid.dx() * grid.dt();
    for (double& v : f.values) v /= cell;
    c.problem.source = SourceData::pointwise(std::move(f));
    return c;
}

std::vector<SweepLevel> refinement_sweep(
    const SweepSpec& spec, const std::function<ManufacturedCase(const SpaceTimeGrid&)>& build) {
    if (spec.levels < 1) throw InvalidArgument("a sweep needs at least one level");
    std::vector<SweepLevel> out;
    std::size_t sx = 1, st = 1;
    for (int l = 0; l < spec.levels; ++l) {
        const std::size_t m = (spec.m0 - 1) * sx + 1;
        const std::size_t n = (spec.n0 - 1) * st + 1;
        const SpaceTimeGrid grid(spec.x_min, spec.x_max, m, spec.t_max, n);
        const auto c = build(grid);
        const auto res = solve_nonhomogeneous(c.problem);
        SweepLevel lv;
        lv.m = m;
        lv.n = n;
        lv.dx = grid.dx();
        lv.dt = grid.dt();
        lv.iterations = res.iterations;
        const auto diff = res.u - c.exact;
        for (double v : diff.values) lv.max_error = std::max(lv.max_error, std::abs(v));
        lv.l2_error = field_lp_norm(diff, 2.0);
        out.push_back(lv);
        sx *= spec.space_factor;
        st *= spec.time_factor;
    }
    return out;
}

double observed_order(double e_coarse, double e_fine, double ratio) {
    return std::log(e_coarse / e_fine) / std::log(ratio);
}

}  // namespace halfwave
