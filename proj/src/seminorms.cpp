#include "halfwave/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "halfwave/error.hpp"
#include "halfwave/fraccalc.hpp"
#include "halfwave/parallel.hpp"

namespace halfwave {

namespace {

void require_half_line(const Grid1D& g, const char* who) {
    if (std::abs(g.t_min()) > 1e-12 * g.dt()) {
        throw InvalidArgument(std::string(who) + " needs a half-line grid starting at t = 0");
    }
}

// Piecewise-linear interpolant restricted to [a, b], as trapezoid nodes.
struct SubInterval {
    std::vector<double> t;
    std::vector<double> u;
    std::vector<double> w;
};

double interpolate(const SampledFunction1D& u, double t) {
    const double dt = u.grid.dt();
    const double pos = (t - u.grid.t_min()) / dt;
    const auto last = static_cast<double>(u.size() - 1);
    if (pos <= 0.0) return u.values.front();
    if (pos >= last) return u.values.back();
    const auto k = static_cast<std::size_t>(std::floor(pos));
    const double f = pos - static_cast<double>(k);
    return (1.0 - f) * u.values[k] + f * u.values[k + 1];
}

SubInterval restrict_to(const SampledFunction1D& u, double a, double b) {
    const double dt = u.grid.dt();
    const double eps = 1e-9 * dt;
    if (!(b > a) || a < u.grid.t_min() - eps || b > u.grid.t_max() + eps) {
        throw InvalidArgument("interval must be non-empty and inside the grid");
    }
    SubInterval s;
    s.t.push_back(a);
    s.u.push_back(interpolate(u, a));
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double tk = u.grid.at(k);
        if (tk > a + eps && tk < b - eps) {
            s.t.push_back(tk);
            s.u.push_back(u.values[k]);
        }
    }
    s.t.push_back(b);
    s.u.push_back(interpolate(u, b));
    const std::size_t n = s.t.size();
    s.w.assign(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double h = s.t[k + 1] - s.t[k];
        s.w[k] += 0.5 * h;
        s.w[k + 1] += 0.5 * h;
    }
    return s;
}

}  // namespace

double fractional_seminorm_sq(const SampledFunction1D& u, double sigma, LineDomain domain) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw InvalidArgument("fractional_seminorm_sq needs 0 < sigma < 1");
    }
    const std::size_t n = u.size();
    const double dt = u.grid.dt();
    const double expo = 1.0 + 2.0 * sigma;
    if (domain == LineDomain::HalfLine) require_half_line(u.grid, "fractional_seminorm_sq");

    std::vector<double> w(n, dt);
    if (domain == LineDomain::HalfLine) w[0] = 0.5 * dt;
    std::vector<double> kernel(n, 0.0);
    for (std::size_t d = 1; d < n; ++d) kernel[d] = std::pow(static_cast<double>(d) * dt, -expo);

    const auto& v = u.values;
    const double interior = blocked_sum(n, 64, [&](std::size_t begin, std::size_t end) {
        CompensatedSum s;
        for (std::size_t i = begin; i < end; ++i) {
            CompensatedSum row;
            for (std::size_t j = i + 1; j < n; ++j) {
                const double diff = v[i] - v[j];
                row.add(w[j] * diff * diff * kernel[j - i]);
            }
            s.add(w[i] * row.value());
        }
        return s.value();
    });

    // Cross terms with the zero extension outside the grid:
    // int_{|s - t| > d} ds / |s - t|^(1 + 2 sigma) = d^(-2 sigma) / (2 sigma) per side.
    CompensatedSum exterior;
    for (std::size_t i = 0; i < n; ++i) {
        const double right = (static_cast<double>(n - 1 - i) + 0.5) * dt;
        double tail = std::pow(right, -2.0 * sigma);
        if (domain == LineDomain::FullLine) {
            const double left = (static_cast<double>(i) + 0.5) * dt;
            tail += std::pow(left, -2.0 * sigma);
        }
        exterior.add(w[i] * v[i] * v[i] * tail / (2.0 * sigma));
    }
    return 2.0 * interior + 2.0 * exterior.value();
}

double gagliardo_seminorm_sq(const SampledFunction1D& u, LineDomain domain) {
    return fractional_seminorm_sq(u, 0.5, domain);
}

HardyTerm hardy_term(const SampledFunction1D& u, double cap) {
    require_half_line(u.grid, "hardy_term");
    const std::size_t n = u.size();
    const double dt = u.grid.dt();
    const auto& v = u.values;
    CompensatedSum s;
    const double mid = 0.5 * (v[0] + v[1]);
    s.add(2.0 * mid * mid);
    for (std::size_t k = 1; k < n; ++k) {
        const double wk = (k == 1 || k == n - 1) ? 0.5 * dt : dt;
        s.add(wk * v[k] * v[k] / u.grid.at(k));
    }
    HardyTerm h;
    h.value = s.value();
    h.divergent = h.value > cap;
    return h;
}

double interval_mean(const SampledFunction1D& u, double a, double b) {
    const auto s = restrict_to(u, a, b);
    CompensatedSum acc;
    for (std::size_t k = 0; k < s.t.size(); ++k) acc.add(s.w[k] * s.u[k]);
    return acc.value() / (b - a);
}

VmoDefect vmo_defect(const SampledFunction1D& u, std::pair<double, double> interval) {
    const auto [a, b] = interval;
    const auto s = restrict_to(u, a, b);
    const double len = b - a;
    const std::size_t n = s.t.size();

    CompensatedSum mean_acc;
    for (std::size_t k = 0; k < n; ++k) mean_acc.add(s.w[k] * s.u[k]);
    const double mean = mean_acc.value() / len;

    CompensatedSum osc;
    for (std::size_t k = 0; k < n; ++k) osc.add(s.w[k] * (s.u[k] - mean) * (s.u[k] - mean));

    const double pairs = blocked_sum(n, 64, [&](std::size_t begin, std::size_t end) {
        CompensatedSum acc;
        for (std::size_t k = begin; k < end; ++k) {
            for (std::size_t l = k + 1; l < n; ++l) {
                const double du = s.u[k] - s.u[l];
                const double dtt = s.t[k] - s.t[l];
                acc.add(s.w[k] * s.w[l] * du * du / (dtt * dtt));
            }
        }
        return acc.value();
    });
    return {osc.value() / len, 2.0 * pairs};
}

SampledFunction1D cutoff(const SampledFunction1D& u, double n_scale) {
    if (!(n_scale > 0.0)) throw InvalidArgument("cutoff scale must be positive");
    const double reach = 2.0 * n_scale;
    const double slack = 1e-9 * u.grid.dt();
    if (-reach < u.grid.t_min() - slack || reach > u.grid.t_max() + slack) {
        throw ScaleTooLarge("cutoff interval (-2n, 2n) with n = " + std::to_string(n_scale) +
                            " exceeds the grid");
    }
    const double mean = interval_mean(u, -reach, reach);
    std::vector<double> out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double at = std::abs(u.grid.at(k));
        const double chi = at <= n_scale ? 1.0 : (at >= reach ? 0.0 : (reach - at) / n_scale);
        out[k] = chi * (u.values[k] - mean);
    }
    return {u.grid, std::move(out)};
}

namespace {

SampledFunction1D mirror(const SampledFunction1D& u, bool symmetric) {
    require_half_line(u.grid, "extension");
    const std::size_t n = u.size();
    const auto g = Grid1D::uniform(-u.grid.t_max(), u.grid.t_max(), 2 * n - 1);
    std::vector<double> out(2 * n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        out[n - 1 + k] = u.values[k];
        out[n - 1 - k] = symmetric ? u.values[k] : 0.0;
    }
    out[n - 1] = u.values[0];
    return {g, std::move(out)};
}

}  // namespace

SampledFunction1D extend_symmetric(const SampledFunction1D& u) { return mirror(u, true); }
SampledFunction1D extend_zero(const SampledFunction1D& u) { return mirror(u, false); }

double b_half_norm(const SampledFunction1D& u, double p) {
    return std::sqrt(half_derivative_energy(u)) + lp_norm(u, p);
}

// ---------------------------------------------------------------------------

double field_gagliardo_sq(const SampledField2D& u, LineDomain time_domain) {
    const auto wx = trapezoid_weights(u.grid.m(), u.grid.dx());
    CompensatedSum s;
    for (std::size_t i = 0; i < u.grid.m(); ++i) {
        s.add(wx[i] * gagliardo_seminorm_sq(u.time_series(i), time_domain));
    }
    return s.value();
}

double field_hardy_sq(const SampledField2D& u) {
    const auto wx = trapezoid_weights(u.grid.m(), u.grid.dx());
    CompensatedSum s;
    for (std::size_t i = 0; i < u.grid.m(); ++i) {
        s.add(wx[i] * hardy_term(u.time_series(i)).value);
    }
    return s.value();
}

namespace {

double weighted_lp(const SampledField2D& u, double p, const std::vector<double>& values) {
    const auto wx = trapezoid_weights(u.grid.m(), u.grid.dx());
    const auto wt = trapezoid_weights(u.grid.n(), u.grid.dt());
    CompensatedSum s;
    for (std::size_t i = 0; i < u.grid.m(); ++i) {
        for (std::size_t j = 0; j < u.grid.n(); ++j) {
            s.add(wx[i] * wt[j] * std::pow(std::abs(values[i * u.grid.n() + j]), p));
        }
    }
    return std::pow(s.value(), 1.0 / p);
}

}  // namespace

double field_lp_norm(const SampledField2D& u, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("field_lp_norm needs p >= 1");
    return weighted_lp(u, p, u.values);
}

double field_grad_lp_norm(const SampledField2D& u, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("field_grad_lp_norm needs p >= 1");
    const std::size_t m = u.grid.m();
    const std::size_t n = u.grid.n();
    const double dx = u.grid.dx();
    std::vector<double> grad(m * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            double g;
            if (i == 0) {
                g = (u(1, j) - u(0, j)) / dx;
            } else if (i == m - 1) {
                g = (u(m - 1, j) - u(m - 2, j)) / dx;
            } else {
                g = (u(i + 1, j) - u(i - 1, j)) / (2.0 * dx);
            }
            grad[i * n + j] = g;
        }
    }
    return weighted_lp(u, p, grad);
}

double field_sup_l2(const SampledField2D& u) {
    const auto wx = trapezoid_weights(u.grid.m(), u.grid.dx());
    double best = 0.0;
    for (std::size_t j = 0; j < u.grid.n(); ++j) {
        CompensatedSum s;
        for (std::size_t i = 0; i < u.grid.m(); ++i) s.add(wx[i] * u(i, j) * u(i, j));
        best = std::max(best, s.value());
    }
    return std::sqrt(best);
}

double NormReport::total() const {
    double t = 0.0;
    if (present(lp_norm)) t += lp_norm;
    if (present(grad_lp)) t += grad_lp;
    if (present(sup_l2)) t += sup_l2;
    double sq = 0.0;
    if (present(gagliardo_sq)) sq += gagliardo_sq;
    if (present(hardy_sq)) sq += hardy_sq;
    return t + std::sqrt(sq);
}

NormReport field_norm_report(const SampledField2D& u, double p, FieldSpace space) {
    if (!(p > 1.0)) throw InvalidArgument("field_norm_report needs p > 1");
    NormReport r;
    r.p = p;
    r.lp_norm = field_lp_norm(u, p);
    r.grad_lp = field_grad_lp_norm(u, p);
    r.gagliardo_sq = field_gagliardo_sq(u, LineDomain::HalfLine);
    if (space == FieldSpace::BDotZero) r.hardy_sq = field_hardy_sq(u);
    if (space == FieldSpace::BIPartial) r.sup_l2 = field_sup_l2(u);
    return r;
}

}  // namespace halfwave
