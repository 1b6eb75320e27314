#include "halfwave/traces.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fft.hpp"
#include "halfwave/error.hpp"
#include "halfwave/parallel.hpp"
#include "halfwave/seminorms.hpp"
#include "halfwave/solver.hpp"

namespace halfwave {

double InitialDatum::l2_norm() const {
    const auto w = trapezoid_weights(values.size(), space.dt());
    CompensatedSum s;
    for (std::size_t i = 0; i < values.size(); ++i) s.add(w[i] * values[i] * values[i]);
    return std::sqrt(s.value());
}

// ---------------------------------------------------------------------------
// Norms of the two parts

double time_derivative_dual_norm(const SampledField2D& u, double p) {
    if (!(p > 1.0)) throw InvalidArgument("time_derivative_dual_norm needs p > 1");
    const double q = p / (p - 1.0);
    const std::size_t m = u.grid.m(), n = u.grid.n();
    const double dx = u.grid.dx(), dt = u.grid.dt();
    const auto w = trapezoid_weights(m, dx);

    const double total = blocked_sum(n - 1, 16, [&](std::size_t b0, std::size_t b1) {
        std::vector<double> prim(m);
        CompensatedSum acc;
        for (std::size_t jj = b0; jj < b1; ++jj) {
            const std::size_t j = jj + 1;
            prim[0] = 0.0;
            double prev = (u(0, j) - u(0, j - 1)) / dt;
            for (std::size_t i = 1; i < m; ++i) {
                const double cur = (u(i, j) - u(i, j - 1)) / dt;
                prim[i] = prim[i - 1] + 0.5 * dx * (prev + cur);
                prev = cur;
            }
            auto slope = [&](double c) {
                double s = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double v = prim[i] + c;
                    s += w[i] * std::pow(std::abs(v), q - 1.0) * (v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0));
                }
                return s;
            };
            const auto [lo_it, hi_it] = std::minmax_element(prim.begin(), prim.end());
            double lo = -*hi_it, hi = -*lo_it;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                (slope(mid) > 0.0 ? hi : lo) = mid;
            }
            const double c = 0.5 * (lo + hi);
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += w[i] * std::pow(std::abs(prim[i] + c), q);
            acc.add(dt * s);
        }
        return acc.value();
    });
    return std::pow(total, 1.0 / q);
}

double b_zero_norm(const SampledField2D& u1, double p) {
    return field_norm_report(u1, p, FieldSpace::BDotZero).total();
}

double b_initial_norm(const SampledField2D& u2, double p) {
    return field_norm_report(u2, p, FieldSpace::BIPartial).total() +
           time_derivative_dual_norm(u2, p);
}

XDecomposition make_decomposition(SampledField2D u1, SampledField2D u2, double p) {
    if (!u1.grid.same_as(u2.grid)) throw InvalidArgument("decomposition parts live on different grids");
    XDecomposition d;
    d.u1_norm = b_zero_norm(u1, p);
    d.u2_norm = b_initial_norm(u2, p);
    d.norm_upper = d.u1_norm + d.u2_norm;
    d.u1 = std::move(u1);
    d.u2 = std::move(u2);
    return d;
}

InitialDatum trace_initial(const XDecomposition& d) {
    return {d.u2.grid.space(), d.u2.time_slice(0)};
}

// ---------------------------------------------------------------------------
// Extension of initial data

namespace {

// 1 on [0, 1], 0 from 2 on, quintic smoothstep in between.
double time_cutoff(double t) {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    const double s = t - 1.0;
    return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

}  // namespace

SampledField2D extend_initial(const InitialDatum& u0, const StructuralFlux& flux,
                              const SpaceTimeGrid& grid, const ExtendOptions& opts) {
    if (u0.values.size() != grid.m() || !u0.space.same_as(grid.space())) {
        throw InvalidArgument("initial datum is not sampled on the space grid");
    }
    std::vector<double> base = u0.values;
    base.front() = 0.0;
    base.back() = 0.0;

    WeakProblem prob;
    prob.grid = grid;
    prob.flux = flux;
    prob.source = SourceData::zero(grid);
    prob.g = SampledField2D::zeros(grid);
    for (std::size_t i = 0; i < grid.m(); ++i)
        for (std::size_t j = 0; j < grid.n(); ++j) prob.g(i, j) = base[i] * time_cutoff(grid.t(j));
    prob.tol = opts.rel_tol * std::max(1.0, u0.l2_norm());
    prob.max_iter = opts.max_iter;
    return solve_nonhomogeneous(prob).u;
}

InitialDatum initial_slice(const SampledField2D& u) {
    const std::size_t m = u.grid.m(), n = u.grid.n();
    if (n < 5) throw InvalidArgument("initial_slice needs at least 5 time samples");
    std::vector<std::size_t> levels;
    for (std::size_t L = 2; L <= 16 && L <= n - 1; L *= 2) levels.push_back(L);
    const double dt = u.grid.dt();

    std::vector<double> out(m);
    std::vector<double> h(levels.size()), mean(levels.size());
    for (std::size_t i = 0; i < m; ++i) {
        const auto row = u.row(i);
        // First cell: the line through the nodes at dt and 2 dt.
        const double first = dt * (row[1] - 0.5 * (row[2] - row[1]));
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const std::size_t L = levels[k];
            double s = 0.5 * (row[1] + row[L]);
            for (std::size_t j = 2; j < L; ++j) s += row[j];
            h[k] = static_cast<double>(L) * dt;
            mean[k] = (first + dt * s) / h[k];
        }
        // Neville's scheme evaluated at h = 0.
        for (std::size_t k = 1; k < levels.size(); ++k) {
            for (std::size_t a = levels.size() - 1; a >= k; --a) {
                mean[a] = (h[a] * mean[a - 1] - h[a - k] * mean[a]) / (h[a] - h[a - k]);
            }
        }
        out[i] = mean.back();
    }
    return {u.grid.space(), std::move(out)};
}

XDecomposition x_norm_upper(const SampledField2D& u, const StructuralFlux& flux,
                            const ExtendOptions& opts) {
    const auto slice = initial_slice(u);
    auto u2 = extend_initial(slice, flux, u.grid, opts);
    auto u1 = u - u2;
    return make_decomposition(std::move(u1), std::move(u2), flux.p);
}

// ---------------------------------------------------------------------------
// Vanishing at t = 0

HardyVanishing hardy_vanishing_check(const SampledField2D& u) {
    const std::size_t m = u.grid.m(), n = u.grid.n();
    if (n < 9) throw InvalidArgument("hardy_vanishing_check needs at least 9 time samples");
    const std::size_t last = 4 * ((n - 1) / 4);
    const double t_end = static_cast<double>(last) * u.grid.dt();

    HardyVanishing res;
    bool all_zero = true;
    for (double v : u.values) all_zero = all_zero && v == 0.0;
    if (all_zero) return res;

    const std::array<std::size_t, 3> strides{4, 2, 1};
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t s = strides[k];
        const std::size_t cnt = last / s + 1;
        const SpaceTimeGrid g(u.grid.space().t_min(), u.grid.space().t_max(), m, t_end, cnt);
        auto f = SampledField2D::zeros(g);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < cnt; ++j) f(i, j) = u(i, j * s);
        res.levels[k] = field_hardy_sq(f);
    }
    const double prev = res.levels[1] - res.levels[0];
    res.growth = res.levels[2] - res.levels[1];
    res.growth_ratio = prev != 0.0 ? res.growth / prev : (res.growth == 0.0 ? 0.0 : 1e300);
    const bool large = res.growth > 1e-3 * std::abs(res.levels[2]);
    res.verdict = large && res.growth_ratio > 0.7 ? HardyVerdict::Diverges : HardyVerdict::Vanishes;
    return res;
}

// ---------------------------------------------------------------------------
// Anisotropic multiplier and lateral traces

SampledField2D lateral_trace_multiplier(const SampledField2D& u, double s,
                                        const MultiplierOptions& opts) {
    if (!(s >= 0.0)) throw InvalidArgument("multiplier order s must be nonnegative");
    const std::size_t m = u.grid.m(), n = u.grid.n();
    double peak = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) peak = std::max(peak, std::abs(u(i, j)));
        edge = std::max(edge, std::abs(u(i, n - 1)));
    }
    if (peak > 0.0 && edge > opts.decay_tol * peak) {
        throw DecayViolation("field does not decay at the final time", edge / peak);
    }
    if (s == 0.0 || peak == 0.0) return u;

    const double dx = u.grid.dx(), dt = u.grid.dt();
    const std::size_t rows = fft::good_size(std::max<std::size_t>(1, opts.space_pad_factor) * m);
    const auto pad_steps = static_cast<std::size_t>(std::ceil(opts.time_pad / dt));
    const std::size_t cols = fft::good_size(n + pad_steps);

    std::vector<std::complex<double>> data(rows * cols);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) data[i * cols + j] = u(i, j);
    fft::fft2(data, rows, cols, false);

    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t r = 0; r < rows; ++r) {
        const double kr = r <= rows / 2 ? static_cast<double>(r) : static_cast<double>(r) - static_cast<double>(rows);
        const double xi = kr / (static_cast<double>(rows) * dx);
        const double space_part = 1.0 + two_pi * two_pi * xi * xi;
        for (std::size_t c = 0; c < cols; ++c) {
            const double phase = -two_pi * static_cast<double>(c) / static_cast<double>(cols);
            const std::complex<double> z = std::polar(1.0, phase);
            const std::complex<double> sym = space_part + (1.0 - z) / dt;
            data[r * cols + c] *= std::pow(sym, -s);
        }
    }
    fft::fft2(data, rows, cols, true);

    auto out = SampledField2D::zeros(u.grid);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = data[i * cols + j].real();
    return out;
}

double leaked_mass_fraction(const SampledField2D& ref, const SampledField2D& v) {
    if (!ref.grid.same_as(v.grid)) throw InvalidArgument("fields live on different grids");
    const std::size_t m = ref.grid.m(), n = ref.grid.n();
    std::size_t start = n;
    for (std::size_t j = 0; j < n && start == n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (ref(i, j) != 0.0) {
                start = j;
                break;
            }
    CompensatedSum before, total;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double sq = v(i, j) * v(i, j);
            total.add(sq);
            if (j < start) before.add(sq);
        }
    }
    return total.value() > 0.0 ? before.value() / total.value() : 0.0;
}

namespace {

LateralTrace wall_traces(const SampledField2D& u) {
    const std::size_t m = u.grid.m(), n = u.grid.n();
    if (m < 4) throw InvalidArgument("lateral traces need at least 4 space nodes");
    std::vector<double> left(n), right(n);
    for (std::size_t j = 0; j < n; ++j) {
        left[j] = 2.0 * u(1, j) - u(2, j);
        right[j] = 2.0 * u(m - 2, j) - u(m - 3, j);
    }
    LateralTrace tr;
    tr.left = SampledFunction1D(u.grid.time(), std::move(left));
    tr.right = SampledFunction1D(u.grid.time(), std::move(right));
    tr.left_seminorm_sq = fractional_seminorm_sq(tr.left, 0.25, LineDomain::HalfLine);
    tr.right_seminorm_sq = fractional_seminorm_sq(tr.right, 0.25, LineDomain::HalfLine);
    return tr;
}

void require_p2(double p) {
    if (p != 2.0) throw Unsupported("lateral traces are only available for p = 2");
}

}  // namespace

LateralTrace lateral_trace_p2(const SampledField2D& u, double p) {
    require_p2(p);
    return wall_traces(u);
}

LateralTrace lateral_trace_p2(const XDecomposition& d, double p) {
    require_p2(p);
    return wall_traces(d.u1);
}

}  // namespace halfwave
