#include "halfwave/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <numbers>
#include <random>

#include "halfwave/error.hpp"
#include "halfwave/fraccalc.hpp"
#include "halfwave/profiles.hpp"
#include "halfwave/seminorms.hpp"
#include "halfwave/solver.hpp"
#include "halfwave/traces.hpp"

namespace halfwave {

SuiteRow SuiteRow::make(std::string identity, std::string quantity, double expected,
                        double measured, double tolerance, Check check) {
    SuiteRow r;
    r.identity = std::move(identity);
    r.quantity = std::move(quantity);
    r.expected = expected;
    r.measured = measured;
    r.tolerance = tolerance;
    r.check = check;
    if (!std::isfinite(measured)) {
        r.pass = false;
        return r;
    }
    switch (check) {
        case Check::Abs: r.pass = std::abs(measured - expected) <= tolerance; break;
        case Check::Rel: r.pass = std::abs(measured - expected) <= tolerance * std::abs(expected); break;
        case Check::AtMost: r.pass = measured <= tolerance; break;
        case Check::AtLeast: r.pass = measured >= tolerance; break;
        case Check::Exact: r.pass = measured == expected; break;
    }
    return r;
}

SuiteRow SuiteRow::failed(std::string identity, std::string quantity, std::string note) {
    SuiteRow r;
    r.identity = std::move(identity);
    r.quantity = std::move(quantity);
    r.expected = std::numeric_limits<double>::quiet_NaN();
    r.measured = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    r.note = std::move(note);
    return r;
}

std::string SuiteRow::tolerance_text() const {
    char buf[48];
    switch (check) {
        case Check::Abs: std::snprintf(buf, sizeof buf, "abs %.3g", tolerance); break;
        case Check::Rel: std::snprintf(buf, sizeof buf, "rel %.3g", tolerance); break;
        case Check::AtMost: std::snprintf(buf, sizeof buf, "<=%.3g", tolerance); break;
        case Check::AtLeast: std::snprintf(buf, sizeof buf, ">=%.3g", tolerance); break;
        case Check::Exact: return "exact";
    }
    return buf;
}

CsvTable suite_table(const std::vector<SuiteRow>& rows) {
    CsvTable t({"identity", "quantity", "expected", "measured", "tolerance", "pass", "note"});
    for (const auto& r : rows) {
        t.add_row({r.identity, r.quantity, format_number(r.expected), format_number(r.measured),
                   r.tolerance_text(), r.pass ? "pass" : "fail", r.note});
    }
    return t;
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Rows = std::vector<SuiteRow>;

// Runs one block of checks; an exception becomes a failed row.
void guard(Rows& rows, const std::string& identity, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        rows.push_back(SuiteRow::failed(identity, "evaluation", e.what()));
    }
}

double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

double l2_diff(std::span<const double> a, std::span<const double> b, double h) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s * h);
}

double gaussian(double t) { return std::exp(-kPi * t * t); }

// Smooth decaying functions on the line used by the seminorm checks.
const std::vector<std::function<double(double)>>& line_corpus() {
    static const std::vector<std::function<double(double)>> corpus = {
        [](double t) { return std::exp(-kPi * t * t); },
        [](double t) { return std::exp(-kPi * (t - 1.3) * (t - 1.3) / 0.5); },
        [](double t) { return t * std::exp(-t * t); },
        [](double t) { return 1.0 / std::cosh(2.0 * t); },
        [](double t) { return std::exp(-2.0 * std::abs(t + 0.4)); },
        [](double t) { return std::cos(3.0 * t) * std::exp(-t * t); },
        [](double t) { return (1.0 - 2.0 * t * t) * std::exp(-t * t); },
        [](double t) { return std::exp(-(t + 2) * (t + 2)) - 0.5 * std::exp(-4 * (t - 1) * (t - 1)); },
        [](double t) { return std::sin(2.0 * t) * std::exp(-0.5 * t * t); },
        [](double t) { return std::exp(-t * t / 4.0); },
    };
    return corpus;
}

// ---------------------------------------------------------------------------

Rows fraccalc_suite(const SuiteSettings& s) {
    Rows rows;
    std::mt19937_64 rng(s.seed);
    std::normal_distribution<double> normal;

    guard(rows, "composition-exactness", [&] {
        const auto g = Grid1D::uniform(0.0, 1.0, 512);
        std::vector<double> v(g.size());
        for (double& x : v) x = normal(rng);
        const SampledFunction1D u(g, v);
        const auto half2 = gl_derivative(gl_derivative(u, FracOrder::forward(0.5)), FracOrder::forward(0.5));
        const auto first = gl_derivative(u, FracOrder::forward(1.0));
        rows.push_back(SuiteRow::make("composition-exactness", "max|D1/2 D1/2 u - D1 u|/max|D1 u|", 0.0,
                                      max_abs_diff(half2.values, first.values) / max_abs(first.values),
                                      1e-12, Check::AtMost));
        const auto b = gl_derivative(gl_derivative(u, FracOrder::forward(0.3)), FracOrder::forward(0.5));
        const auto c = gl_derivative(u, FracOrder::forward(0.8));
        rows.push_back(SuiteRow::make("composition-general", "max|D0.5 D0.3 u - D0.8 u|/max|D0.8 u|", 0.0,
                                      max_abs_diff(b.values, c.values) / max_abs(c.values), 1e-12,
                                      Check::AtMost));
    });

    guard(rows, "adjointness", [&] {
        rows.push_back(SuiteRow::make("adjointness", "defect alpha=1/2 n=256", 0.0,
                                      adjointness_defect(FracOrder::forward(0.5), 256), 0.0, Check::Exact));
        rows.push_back(SuiteRow::make("adjointness", "defect alpha=1 n=16", 0.0,
                                      adjointness_defect(FracOrder::forward(1.0), 16), 0.0, Check::Exact));
        rows.push_back(SuiteRow::make("adjointness", "defect alpha=0.3 n=64", 0.0,
                                      adjointness_defect(FracOrder::forward(0.3), 64), 0.0, Check::Exact));
    });

    guard(rows, "gl-weights", [&] {
        const auto w = GLWeights::make(0.5, 4096, 1.0);
        rows.push_back(SuiteRow::make("gl-weights", "w0", 1.0, w.weights()[0], 0.0, Check::Exact));
        rows.push_back(SuiteRow::make("gl-weights", "w1", -0.5, w.weights()[1], 0.0, Check::Exact));
        double partial = 0.0, last = std::numeric_limits<double>::infinity();
        std::size_t increases = 0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            partial += w.weights()[k];
            if (k >= 16) {
                if (std::abs(partial) > last) ++increases;
                last = std::abs(partial);
            }
        }
        rows.push_back(SuiteRow::make("gl-weights", "partial-sum increases for k>=16", 0.0,
                                      static_cast<double>(increases), 0.0, Check::Exact));
    });

    guard(rows, "riemann-liouville", [&] {
        const auto g = Grid1D::uniform(0.0, 4.0, 4097);
        const auto u = SampledFunction1D::sample(
            g, [](double t) { return std::sqrt(t) / std::tgamma(1.5); });
        const auto v = gl_derivative(u, FracOrder::forward(0.5));
        double err = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k)
            if (g.at(k) >= 1.0) err = std::max(err, std::abs(v[k] - 1.0));
        rows.push_back(SuiteRow::make("riemann-liouville", "max|D1/2 t^1/2/G(3/2) - 1| on t>=1", 0.0, err,
                                      1e-3, Check::AtMost));
    });

    const auto line = Grid1D::uniform(-8.0, 8.0, 1024);
    const auto gauss = SampledFunction1D::sample(line, gaussian);

    guard(rows, "half-derivative-gaussian", [&] {
        const auto fwd = spectral_derivative(gauss, FracOrder::forward(0.5));
        const auto bwd = spectral_derivative(gauss, FracOrder::backward(0.5));
        const double ef = std::pow(lp_norm(fwd, 2.0), 2);
        const double eb = std::pow(lp_norm(bwd, 2.0), 2);
        rows.push_back(SuiteRow::make("half-derivative-gaussian", "||D+1/2 u||^2", 1.0, ef, 0.01, Check::Rel));
        rows.push_back(SuiteRow::make("half-derivative-gaussian", "| ||D+|| - ||D-|| |/||D+||", 0.0,
                                      std::abs(ef - eb) / ef, 1e-12, Check::AtMost));
    });

    guard(rows, "first-order-spectral", [&] {
        // Centred differences are off by dt^2 max|u'''|/6, about 3.6 dt^2 here.
        const auto d = spectral_derivative(gauss, FracOrder::forward(1.0));
        double err = 0.0;
        const double h = line.dt();
        for (std::size_t k = 1; k + 1 < line.size(); ++k)
            err = std::max(err, std::abs(d[k] - (gauss[k + 1] - gauss[k - 1]) / (2 * h)));
        rows.push_back(SuiteRow::make("first-order-spectral", "max|D1 u - centred difference|/dt^2", 0.0,
                                      err / (h * h), 4.0, Check::AtMost));
    });

    guard(rows, "hilbert-pair", [&] {
        const auto g = Grid1D::uniform(-40.0, 40.0, 4096);
        auto window = [](double t) { return std::exp(-t * t / 16.0); };
        const auto u = SampledFunction1D::sample(g, [&](double t) { return std::cos(kTwoPi * t) * window(t); });
        const auto h = hilbert_transform(u);
        double err = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k)
            if (std::abs(g.at(k)) <= 10.0)
                err = std::max(err, std::abs(h[k] - std::sin(kTwoPi * g.at(k)) * window(g.at(k))));
        rows.push_back(SuiteRow::make("hilbert-pair", "max|h(cos w) - sin w| on |t|<=10", 0.0, err, 1e-8,
                                      Check::AtMost));
    });

    guard(rows, "hilbert-isometry", [&] {
        // Zero-mean input: the DFT zero mode is annihilated by h.
        const auto u = SampledFunction1D::sample(line, [](double t) { return t * std::exp(-kPi * t * t); });
        const auto h = hilbert_transform(u);
        const auto hh = apply_multiplier(u, hilbert_symbol() * hilbert_symbol());
        rows.push_back(SuiteRow::make("hilbert-isometry", "| ||h u|| - ||u|| |/||u||", 0.0,
                                      std::abs(lp_norm(h, 2.0) - lp_norm(u, 2.0)) / lp_norm(u, 2.0), 1e-10,
                                      Check::AtMost));
        std::vector<double> neg(u.values);
        for (double& v : neg) v = -v;
        rows.push_back(SuiteRow::make("hilbert-isometry", "||h h u + u||/||u||", 0.0,
                                      l2_diff(hh.values, neg, line.dt()) / lp_norm(u, 2.0), 1e-10,
                                      Check::AtMost));
    });

    guard(rows, "hilbert-bridge", [&] {
        const auto lhs = apply_multiplier(gauss, derivative_symbol(FracOrder::forward(0.5)) * h_alpha_symbol(0.5));
        const auto rhs = spectral_derivative(gauss, FracOrder::backward(0.5));
        rows.push_back(SuiteRow::make("hilbert-bridge", "||D+1/2 H1/2 u - D-1/2 u||/||D-1/2 u||", 0.0,
                                      l2_diff(lhs.values, rhs.values, line.dt()) / lp_norm(rhs, 2.0), 1e-10,
                                      Check::AtMost));
        // H^a multiplies the zero mode by cos(pi a), so the semigroup law needs zero mean.
        const auto odd = SampledFunction1D::sample(line, [](double t) { return t * gaussian(t); });
        const auto quarter2 = apply_multiplier(odd, h_alpha_symbol(0.25) * h_alpha_symbol(0.25));
        const auto half = apply_multiplier(odd, h_alpha_symbol(0.5));
        rows.push_back(SuiteRow::make("hilbert-bridge", "||H1/4 H1/4 u - H1/2 u||/||u||, zero-mean u", 0.0,
                                      l2_diff(quarter2.values, half.values, line.dt()) / lp_norm(odd, 2.0),
                                      1e-10, Check::AtMost));
        const auto h0 = h_alpha(gauss, 0.0);
        rows.push_back(SuiteRow::make("hilbert-bridge", "max|H0 u - u|", 0.0,
                                      max_abs_diff(h0.values, gauss.values), 1e-12, Check::AtMost));
    });

    guard(rows, "backend-agreement", [&] {
        const auto gl = gl_derivative(gauss, FracOrder::forward(0.5));
        const auto sp = spectral_derivative(gauss, FracOrder::forward(0.5));
        double err = 0.0;
        for (std::size_t k = 0; k < line.size(); ++k)
            if (std::abs(line.at(k)) <= 4.0) err = std::max(err, std::abs(gl[k] - sp[k]));
        rows.push_back(SuiteRow::make("backend-agreement", "max|GL - spectral| on |t|<=4, per sqrt(dt)", 0.0,
                                      err / std::sqrt(line.dt()), 1.0, Check::AtMost));
    });
    return rows;
}

// ---------------------------------------------------------------------------

Rows seminorms_suite(const SuiteSettings& s) {
    Rows rows;
    std::mt19937_64 rng(s.seed ^ 0x5e111);

    const auto line = Grid1D::uniform(-8.0, 8.0, 2048);
    const auto gauss = SampledFunction1D::sample(line, gaussian);

    guard(rows, "two-pi-identity", [&] {
        const double gag = gagliardo_seminorm_sq(gauss, LineDomain::FullLine);
        rows.push_back(SuiteRow::make("two-pi-identity", "Gagliardo double integral of e^-pi t^2", kTwoPi, gag, 0.01,
                                      Check::Rel));
        rows.push_back(SuiteRow::make("two-pi-identity", "||D-1/2 u||^2", 1.0, half_derivative_energy(gauss), 0.01,
                                      Check::Rel));
        double worst = 0.0;
        for (const auto& f : line_corpus()) {
            const auto u = SampledFunction1D::sample(line, f);
            const double a = gagliardo_seminorm_sq(u, LineDomain::FullLine);
            const double b = kTwoPi * half_derivative_energy(u);
            worst = std::max(worst, std::abs(a - b) / std::max(a, b));
        }
        rows.push_back(SuiteRow::make("two-pi-identity", "corpus max |gag - 2pi E|/max", 0.0, worst, 0.02,
                                      Check::AtMost));
    });

    guard(rows, "scale-translation", [&] {
        const double ref = gagliardo_seminorm_sq(gauss, LineDomain::FullLine);
        for (double a : {0.5, 2.0, 5.0}) {
            for (double b : {-1.0, 0.7}) {
                // u(a(t - b)) sampled on the image of the reference grid.
                const auto g = Grid1D::uniform(b - 8.0 / a, b + 8.0 / a, line.size());
                const auto u = SampledFunction1D::sample(g, [&](double t) { return gaussian(a * (t - b)); });
                char q[64];
                std::snprintf(q, sizeof q, "seminorm ratio a=%g b=%g", a, b);
                rows.push_back(SuiteRow::make("scale-translation", q, 1.0,
                                              gagliardo_seminorm_sq(u, LineDomain::FullLine) / ref, 1e-3,
                                              Check::Rel));
            }
        }
    });

    guard(rows, "hardy-term", [&] {
        const auto g = Grid1D::uniform(0.0, 10.0, 10001);
        const auto u = SampledFunction1D::sample(g, [](double t) { return std::min(t, 1.0); });
        rows.push_back(SuiteRow::make("hardy-term", "int min(t,1)^2/t", 0.5 + std::log(10.0), hardy_term(u).value,
                                      0.01, Check::Rel));
        const auto one = SampledFunction1D::sample(g, [](double) { return 1.0; });
        rows.push_back(SuiteRow::make("hardy-term", "u=1 flagged divergent above cap 5", 1.0,
                                      hardy_term(one, 5.0).divergent ? 1.0 : 0.0, 0.0, Check::Exact));
    });

    guard(rows, "vmo", [&] {
        const auto g = Grid1D::uniform(0.0, 1.0, 2001);
        const auto lin = SampledFunction1D::sample(g, [](double t) { return t; });
        const auto d = vmo_defect(lin, {0.0, 1.0});
        rows.push_back(SuiteRow::make("vmo", "lhs for u=t on (0,1)", 1.0 / 12.0, d.lhs, 1e-3, Check::Rel));
        rows.push_back(SuiteRow::make("vmo", "rhs for u=t on (0,1)", 1.0, d.rhs, 0.01, Check::Rel));

        const auto big = Grid1D::uniform(0.0, 10.0, 1001);
        std::uniform_real_distribution<double> unif(0.0, 10.0);
        std::normal_distribution<double> normal;
        std::size_t violations = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> knots(21);
            for (double& k : knots) k = normal(rng);
            const auto u = SampledFunction1D::sample(big, [&](double t) {
                const double pos = t / 0.5;
                const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(pos), 19);
                const double f = pos - static_cast<double>(k);
                return (1 - f) * knots[k] + f * knots[k + 1];
            });
            double a = unif(rng), b = unif(rng);
            if (a > b) std::swap(a, b);
            if (b - a < 0.05) b = std::min(10.0, a + 0.05), a = b - 0.05;
            const auto v = vmo_defect(u, {a, b});
            if (!(v.lhs <= v.rhs)) ++violations;
        }
        rows.push_back(SuiteRow::make("vmo", "violations over 100 random pairs", 0.0,
                                      static_cast<double>(violations), 0.0, Check::Exact));
    });

    guard(rows, "cutoff", [&] {
        const auto g = Grid1D::uniform(-4096.0, 4096.0, 81921);
        std::size_t increases = 0;
        double worst_final = 0.0;
        for (const auto& f : line_corpus()) {
            const auto u = SampledFunction1D::sample(g, f);
            const double nu = b_half_norm(u, 2.0);
            double last = std::numeric_limits<double>::infinity();
            double dist = 0.0;
            for (double n = 1.0; n <= 2048.0; n *= 2.0) {
                auto c = cutoff(u, n);
                for (std::size_t k = 0; k < c.values.size(); ++k) c.values[k] -= u[k];
                dist = b_half_norm(c, 2.0) / nu;
                if (dist > last) ++increases;
                last = dist;
            }
            worst_final = std::max(worst_final, dist);
        }
        rows.push_back(SuiteRow::make("cutoff", "distance increases over n=1..2048", 0.0,
                                      static_cast<double>(increases), 0.0, Check::Exact));
        rows.push_back(SuiteRow::make("cutoff", "max distance/||u|| at n=2048", 0.0, worst_final, 0.02,
                                      Check::AtMost));
        bool threw = false;
        try {
            cutoff(SampledFunction1D::sample(line, gaussian), 5.0);
        } catch (const ScaleTooLarge&) {
            threw = true;
        }
        rows.push_back(SuiteRow::make("cutoff", "ScaleTooLarge for 2n beyond grid", 1.0, threw ? 1.0 : 0.0, 0.0,
                                      Check::Exact));

        // Boundedness constant: only finiteness is asserted, the value is reported.
        const auto small = Grid1D::uniform(-64.0, 64.0, 4097);
        double c_max = 0.0;
        for (const auto& f : line_corpus()) {
            const auto u = SampledFunction1D::sample(small, f);
            const double base = gagliardo_seminorm_sq(u, LineDomain::FullLine);
            for (double n = 1.0; n <= 16.0; n *= 2.0)
                c_max = std::max(c_max, gagliardo_seminorm_sq(cutoff(u, n), LineDomain::FullLine) / base);
        }
        rows.push_back(SuiteRow::make("cutoff", "measured C = max |chi_n(u - u_In)|^2 / |u|^2", 0.0, c_max,
                                      0.0, Check::AtLeast));
    });

    guard(rows, "extensions", [&] {
        const auto half = Grid1D::uniform(0.0, 20.0, 2001);
        const auto u = SampledFunction1D::sample(half, [](double t) { return t * std::exp(-t); });
        const double hl = gagliardo_seminorm_sq(u, LineDomain::HalfLine);
        const double hardy = hardy_term(u).value;
        const double full0 = gagliardo_seminorm_sq(extend_zero(u), LineDomain::FullLine);
        rows.push_back(SuiteRow::make("extensions", "half-line seminorm of t e^-t", 0.5, hl, 0.01, Check::Rel));
        rows.push_back(SuiteRow::make("extensions", "full(E0 u)/(half + 2 hardy)", 1.0, full0 / (hl + 2 * hardy),
                                      0.01, Check::Rel));
        const double fulls = gagliardo_seminorm_sq(extend_symmetric(u), LineDomain::FullLine);
        rows.push_back(SuiteRow::make("extensions", "full(E_S u)/half", 0.0, fulls / hl, 4.0, Check::AtMost));
        const auto gh = SampledFunction1D::sample(Grid1D::uniform(0.0, 8.0, 1025), gaussian);
        const auto es = extend_symmetric(gh);
        rows.push_back(SuiteRow::make("extensions", "E_S Gaussian: gag/(2pi E)", 1.0,
                                      gagliardo_seminorm_sq(es, LineDomain::FullLine) /
                                          (kTwoPi * half_derivative_energy(es)),
                                      0.02, Check::Rel));
    });

    guard(rows, "field-norms", [&] {
        const SpaceTimeGrid sep(0.0, 1.0, 65, 8.0, 1024, -8.0);
        const auto u = SampledField2D::sample(sep, [](double x, double t) { return std::sin(kPi * x) * gaussian(t); });
        const auto w = trapezoid_weights(sep.m(), sep.dx());
        double s2 = 0.0;
        for (std::size_t i = 0; i < sep.m(); ++i) s2 += w[i] * std::pow(std::sin(kPi * sep.x(i)), 2);
        rows.push_back(SuiteRow::make("field-norms", "field Gagliardo of sin(pi x) e^-pi t^2", kTwoPi * s2,
                                      field_gagliardo_sq(u, LineDomain::FullLine), 0.01, Check::Rel));

        const SpaceTimeGrid q(0.0, 1.0, 129, 20.0, 2001);
        const auto v = SampledField2D::sample(q, [](double x, double t) { return std::sin(kPi * x) * t * std::exp(-t); });
        const auto rep = field_norm_report(v, 2.0, FieldSpace::BDotZero);
        rows.push_back(SuiteRow::make("field-norms", "L2 norm", std::sqrt(0.125), rep.lp_norm, 0.01, Check::Rel));
        rows.push_back(SuiteRow::make("field-norms", "grad L2 norm", kPi * std::sqrt(0.125), rep.grad_lp, 0.01,
                                      Check::Rel));
        rows.push_back(SuiteRow::make("field-norms", "Hardy term", 0.125, rep.hardy_sq, 0.01, Check::Rel));
        rows.push_back(SuiteRow::make("field-norms", "half-line Gagliardo", 0.25, rep.gagliardo_sq, 0.01,
                                      Check::Rel));

        // Jump at t = 0: the Hardy term grows by (1/2) ln 2 per halving of dt.
        const SpaceTimeGrid j1(0.0, 1.0, 33, 2.0, 201), j2(0.0, 1.0, 33, 2.0, 401);
        auto jump = [](double x, double) { return std::sin(kPi * x); };
        const double h1 = field_hardy_sq(SampledField2D::sample(j1, jump));
        const double h2 = field_hardy_sq(SampledField2D::sample(j2, jump));
        rows.push_back(SuiteRow::make("field-norms", "Hardy growth per halving, jump at t=0",
                                      0.5 * std::log(2.0), h2 - h1, 0.02, Check::Rel));
    });
    return rows;
}

// ---------------------------------------------------------------------------

void audit_rows(Rows& rows, const std::string& label, const StructuralFlux& a, const SuiteSettings& s) {
    const auto rep = audit_flux(a, s.seed, s.audit_samples);
    const std::string id = "audit-" + label;
    rows.push_back(SuiteRow::make(id, "monotonicity violations", 0.0,
                                  static_cast<double>(rep.monotonicity_violations), 0.0, Check::Exact));
    rows.push_back(SuiteRow::make(id, "coercivity violations", 0.0,
                                  static_cast<double>(rep.coercivity_violations), 0.0, Check::Exact));
    rows.push_back(SuiteRow::make(id, "boundedness violations", 0.0,
                                  static_cast<double>(rep.boundedness_violations), 0.0, Check::Exact));
}

Rows flux_suite(const SuiteSettings& s) {
    Rows rows;
    const std::vector<std::pair<std::string, std::function<StructuralFlux()>>> shipped = {
        {"p_laplacian-1.5", [] { return p_laplacian_flux(1.5); }},
        {"p_laplacian-2", [] { return p_laplacian_flux(2.0); }},
        {"p_laplacian-3", [] { return p_laplacian_flux(3.0); }},
        {"p_laplacian-4", [] { return p_laplacian_flux(4.0); }},
        {"regularized-1.5", [] { return regularized_p_laplacian_flux(1.5, 1e-3); }},
        {"regularized-3", [] { return regularized_p_laplacian_flux(3.0, 1e-3); }},
        {"weighted-3",
         [] {
             return weighted_p_laplacian_flux(
                 3.0, [](double x, double t) { return 1.0 + 0.5 * std::sin(kTwoPi * x) * std::cos(t); }, 0.5, 1.5);
         }},
        {"linear", [] { return linear_flux({2.0, 1.0, 1.0, 3.0}, 2); }},
        {"shifted-3",
         [] {
             return shifted_flux(p_laplacian_flux(3.0), 2, [](double x, double t, std::span<double> g) {
                 g[0] = std::sin(kPi * x) * std::exp(-t);
                 g[1] = 0.5 * std::cos(kPi * x);
             });
         }},
        {"shifted-1.5",
         [] {
             return shifted_flux(p_laplacian_flux(1.5), 2, [](double x, double t, std::span<double> g) {
                 g[0] = std::sin(kPi * x) * std::exp(-t);
                 g[1] = 0.5 * std::cos(kPi * x);
             });
         }},
    };
    for (const auto& [label, make] : shipped) {
        guard(rows, "audit-" + label, [&] { audit_rows(rows, label, make(), s); });
    }

    guard(rows, "audit-broken", [&] {
        const auto rep = audit_flux(broken_flux(), s.seed, s.audit_samples);
        rows.push_back(SuiteRow::make("audit-broken", "monotonicity violations = samples",
                                      static_cast<double>(rep.samples),
                                      static_cast<double>(rep.monotonicity_violations), 0.0, Check::Exact));
    });

    guard(rows, "flux-values", [&] {
        const auto p4 = p_laplacian_flux(4.0);
        rows.push_back(SuiteRow::make("flux-values", "p=4 A(2)", 8.0, p4(0.0, 0.0, 2.0), 0.0, Check::Exact));
        const auto p15 = p_laplacian_flux(1.5);
        rows.push_back(SuiteRow::make("flux-values", "p=1.5 A(0)", 0.0, p15(0.0, 0.0, 0.0), 0.0, Check::Exact));
        const auto p2 = p_laplacian_flux(2.0);
        std::vector<double> xi{3.0, -4.0}, out(2);
        p2.eval(0.0, 0.0, xi, out);
        rows.push_back(SuiteRow::make("flux-values", "p=2 A(3,-4) error", 0.0,
                                      std::abs(out[0] - 3.0) + std::abs(out[1] + 4.0), 0.0, Check::Exact));
    });

    if (s.configured_flux) {
        const auto& a = *s.configured_flux;
        guard(rows, "audit-configured", [&] { audit_rows(rows, "configured-" + a.name, a, s); });
    }
    return rows;
}

// ---------------------------------------------------------------------------

SampledField2D random_field(const SpaceTimeGrid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    auto f = SampledField2D::zeros(g);
    for (double& v : f.values) v = normal(rng);
    return f;
}

double field_max_abs_diff(const SampledField2D& a, const SampledField2D& b) {
    return max_abs_diff(a.values, b.values);
}

Rows solver_suite(const SuiteSettings& s) {
    Rows rows;
    std::mt19937_64 rng(s.seed ^ 0x501e);
    const int levels = std::max(2, s.refine);

    guard(rows, "time-form", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 9, 1.0, 65);
        const TimeForm form = assemble_time_form(g);
        double worst = 0.0, min_diag = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 100; ++k) {
            const auto u = random_field(g, rng);
            const auto v = random_field(g, rng);
            const double nu =
                std::sqrt(std::inner_product(u.values.begin(), u.values.end(), u.values.begin(), 0.0) *
                          std::inner_product(v.values.begin(), v.values.end(), v.values.begin(), 0.0));
            worst = std::max(worst, std::abs(form.pairing_half(u, v) - form.pairing_first(u, v)) / nu);
            min_diag = std::min(min_diag, form.pairing_first(u, u));
        }
        rows.push_back(SuiteRow::make("time-form", "|B_half - B_first|/(|u||v|)", 0.0, worst, 1e-12,
                                      Check::AtMost));
        rows.push_back(SuiteRow::make("time-form", "min B(u,u) over 100 random u", 0.0, min_diag, 0.0,
                                      Check::AtLeast));
        auto e = SampledField2D::zeros(g);
        e(4, 10) = 1.0;
        rows.push_back(SuiteRow::make("time-form", "B(e_k, e_k)", g.dx(), form.pairing_first(e, e), 1e-12,
                                      Check::Rel));
    });

    guard(rows, "model-operator", [&] {
        const auto line = Grid1D::uniform(-6.0, 6.0, 1201);
        const auto ustar = SampledFunction1D::sample(line, gaussian);
        const auto f2 = model_operator_apply(ustar, 2.0);
        const auto u2 = model_operator_solve(f2, 2.0, 1e-10);
        rows.push_back(SuiteRow::make("model-operator", "p=2 max|u - u*|", 0.0,
                                      max_abs_diff(u2.values, ustar.values), 1e-6, Check::AtMost));
        const auto u3s = SampledFunction1D::sample(line, [](double t) { return std::exp(-t * t); });
        const double tol = 1e-9;
        const auto u3 = model_operator_solve(model_operator_apply(u3s, 3.0), 3.0, tol);
        rows.push_back(SuiteRow::make("model-operator", "p=3 ||u - u*||_2", 0.0,
                                      l2_diff(u3.values, u3s.values, line.dt()), 10 * tol, Check::AtMost));
        const auto z = model_operator_solve(SampledFunction1D::zeros(line), 1.5, tol);
        rows.push_back(SuiteRow::make("model-operator", "f=0 max|u|", 0.0, max_abs(z.values), 0.0, Check::Exact));
    });

    guard(rows, "trivial-data", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 33, 1.0, 65);
        WeakProblem prob;
        prob.grid = g;
        prob.flux = p_laplacian_flux(3.0);
        prob.source = SourceData::zero(g);
        prob.g = SampledField2D::zeros(g);
        SolverOptions opts;
        opts.initial = random_field(g, rng);
        const auto res = solve_homogeneous(prob, opts);
        rows.push_back(SuiteRow::make("trivial-data", "zero data max|u|", 0.0, max_abs(res.u.values), 1e-8,
                                      Check::AtMost));
        std::size_t rises = 0;
        for (std::size_t k = 1; k < res.energy_trace.size(); ++k)
            if (res.energy_trace[k] > res.energy_trace[k - 1]) ++rises;
        rows.push_back(SuiteRow::make("trivial-data", "energy trace increases", 0.0, static_cast<double>(rises),
                                      0.0, Check::Exact));
        WeakProblem c = prob;
        c.g = SampledField2D::sample(g, [](double, double) { return 0.75; });
        const auto rc = solve_nonhomogeneous(c);
        double err = 0.0;
        for (double v : rc.u.values) err = std::max(err, std::abs(v - 0.75));
        rows.push_back(SuiteRow::make("trivial-data", "g=c max|u - c|", 0.0, err, 1e-12, Check::AtMost));
    });

    guard(rows, "heat-order", [&] {
        for (const char* which : {"manufactured", "separable"}) {
            const bool man = std::string(which) == "manufactured";
            auto build = [man](const SpaceTimeGrid& g) {
                return man ? heat_manufactured(g, 1e-11) : heat_separable(g, 1e-11);
            };
            SweepSpec dt_spec;
            dt_spec.m0 = 129;
            dt_spec.n0 = 65;
            dt_spec.space_factor = 1;
            dt_spec.time_factor = 2;
            dt_spec.levels = levels;
            const auto dt_sweep = refinement_sweep(dt_spec, build);
            const double dt_order = observed_order(dt_sweep[levels - 2].max_error, dt_sweep[levels - 1].max_error, 2.0);
            rows.push_back(SuiteRow::make(std::string("heat-") + which, "dt order", 1.0, dt_order, 0.9,
                                          Check::AtLeast));
            SweepSpec dx_spec;
            dx_spec.m0 = 9;
            dx_spec.n0 = 65;
            dx_spec.space_factor = 2;
            dx_spec.time_factor = 4;
            dx_spec.levels = levels;
            const auto dx_sweep = refinement_sweep(dx_spec, build);
            const double dx_order = observed_order(dx_sweep[levels - 2].max_error, dx_sweep[levels - 1].max_error, 2.0);
            rows.push_back(SuiteRow::make(std::string("heat-") + which, "dx order (dt ~ dx^2)", 2.0, dx_order, 1.8,
                                          Check::AtLeast));
        }
    });

    guard(rows, "heat-lateral", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 33, 1.0, 257);
        WeakProblem prob;
        prob.grid = g;
        prob.flux = p_laplacian_flux(2.0);
        prob.source = SourceData::zero(g);
        auto gamma = [](double x) { return 1.0 + 2.0 * x; };
        prob.g = SampledField2D::sample(g, [&](double x, double t) {
            const bool wall = x == g.space().t_min() || x == g.space().t_max();
            return (t > 0.0 || wall) ? gamma(x) : 0.0;
        });
        prob.tol = 1e-10;
        const auto res = solve_nonhomogeneous(prob);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < g.m(); ++i) {
            const double d = res.u(i, g.n() - 1) - gamma(g.x(i));
            num += d * d;
            den += gamma(g.x(i)) * gamma(g.x(i));
        }
        rows.push_back(SuiteRow::make("heat-lateral", "terminal ||u - gamma||/||gamma||", 0.0,
                                      std::sqrt(num / den), 0.01, Check::AtMost));
    });

    guard(rows, "nonlinear", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 33, 2.0, 129);
        const double tol = 1e-9;
        auto ustar = [](double x, double t) { return std::sin(kPi * x) * (1.0 + x) * t * std::exp(-t); };
        for (double p : {1.5, 3.0, 4.0}) {
            const auto c = discrete_manufactured(g, p_laplacian_flux(p), ustar, tol);
            const auto res = solve_nonhomogeneous(c.problem);
            char id[32];
            std::snprintf(id, sizeof id, "nonlinear-p%g", p);
            rows.push_back(SuiteRow::make(id, "||u - u*||_2", 0.0, field_lp_norm(res.u - c.exact, 2.0), 10 * tol,
                                          Check::AtMost));
            rows.push_back(SuiteRow::make(id, "uniqueness max distance (5 starts)", 0.0,
                                          uniqueness_probe(c.problem, 5, s.seed), 10 * tol, Check::AtMost));
        }
    });

    guard(rows, "monotone-contraction", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 33, 1.0, 65);
        const double p = 3.0;
        WeakProblem a;
        a.grid = g;
        a.flux = p_laplacian_flux(p);
        a.g = SampledField2D::zeros(g);
        a.tol = 1e-11;
        WeakProblem b = a;
        a.source = SourceData::pointwise(SampledField2D::sample(g, [](double x, double t) { return 5 * std::sin(kPi * x) * t; }));
        b.source = SourceData::pointwise(SampledField2D::sample(g, [](double x, double t) { return 3 * std::sin(2 * kPi * x) * std::cos(t); }));
        const auto ua = solve_homogeneous(a).u, ub = solve_homogeneous(b).u;
        const auto du = ua - ub;
        const auto df = *a.source.f_pt - *b.source.f_pt;
        double pairing = 0.0;
        for (std::size_t k = 0; k < du.values.size(); ++k) pairing += df.values[k] * du.values[k];
        pairing *= g.dx() * g.dt();
        // Cell gradients, as in the flux term of the discrete operator.
        double grad = 0.0;
        for (std::size_t i = 0; i + 1 < g.m(); ++i)
            for (std::size_t j = 0; j < g.n(); ++j)
                grad += std::pow(std::abs((du(i + 1, j) - du(i, j)) / g.dx()), p);
        grad *= g.dx() * g.dt();
        rows.push_back(SuiteRow::make("monotone-contraction", "2^(2-p)||grad(u1-u2)||_p^p / <f1-f2, u1-u2>", 0.0,
                                      std::pow(2.0, 2.0 - p) * grad / pairing, 1.0 + 1e-6, Check::AtMost));
    });

    guard(rows, "p4-manufactured", [&] {
        SweepSpec spec;
        spec.t_max = 2.0;
        spec.m0 = 17;
        spec.n0 = 65;
        spec.space_factor = 2;
        spec.time_factor = 2;
        spec.levels = levels;
        const auto sweep = refinement_sweep(spec, [](const SpaceTimeGrid& g) { return p_laplacian_manufactured(g, 4.0, 1e-10); });
        std::size_t rises = 0;
        for (std::size_t k = 1; k < sweep.size(); ++k)
            if (sweep[k].max_error >= sweep[k - 1].max_error) ++rises;
        rows.push_back(SuiteRow::make("p4-manufactured", "error non-decrease under refinement", 0.0,
                                      static_cast<double>(rises), 0.0, Check::Exact));
        rows.push_back(SuiteRow::make("p4-manufactured", "finest max error", 0.0, sweep.back().max_error, 1e-2,
                                      Check::AtMost));
    });

    if (s.configured_flux) {
        guard(rows, "configured-solve", [&] {
            const SpaceTimeGrid g(0.0, 1.0, 33, 1.0, 65);
            const auto c = discrete_manufactured(
                g, *s.configured_flux,
                [](double x, double t) { return std::sin(kPi * x) * t * std::exp(-t); }, 1e-9);
            SolverOptions opts;
            opts.audit_samples = s.audit_samples;
            opts.audit_seed = s.seed;
            const auto res = solve_nonhomogeneous(c.problem, opts);
            rows.push_back(SuiteRow::make("configured-solve", "||u - u*||_2", 0.0,
                                          field_lp_norm(res.u - c.exact, 2.0), 1e-8, Check::AtMost));
        });
    }
    return rows;
}

// ---------------------------------------------------------------------------

InitialDatum random_datum(const Grid1D& space, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    double c[6];
    for (double& v : c) v = normal(rng);
    InitialDatum d{space, std::vector<double>(space.size())};
    for (std::size_t i = 0; i < space.size(); ++i) {
        double v = 0.0;
        for (int k = 1; k <= 6; ++k) v += c[k - 1] * std::sin(k * kPi * space.at(i)) / (k * k);
        d.values[i] = v;
    }
    d.values.front() = d.values.back() = 0.0;
    return d;
}

double datum_l2_diff(const InitialDatum& a, const InitialDatum& b) {
    InitialDatum d{a.space, a.values};
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
    return d.l2_norm();
}

Rows traces_suite(const SuiteSettings& s) {
    Rows rows;
    std::mt19937_64 rng(s.seed ^ 0x7ace);
    const auto heat = p_laplacian_flux(2.0);

    guard(rows, "trace-extension", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 65, 0.1, 1025);
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            const auto u0 = random_datum(g.space(), rng);
            const auto e = extend_initial(u0, heat, g);
            const auto tr = trace_initial(x_norm_upper(e, heat));
            worst = std::max(worst, datum_l2_diff(tr, u0) / u0.l2_norm());
        }
        rows.push_back(SuiteRow::make("trace-extension", "max ||Tr0 E u0 - u0||/||u0|| (3 data)", 0.0, worst, 1e-3,
                                      Check::AtMost));
        const auto zero = extend_initial(InitialDatum{g.space(), std::vector<double>(g.m(), 0.0)}, heat, g);
        rows.push_back(SuiteRow::make("trace-extension", "E(0) max|u|", 0.0, max_abs(zero.values), 0.0,
                                      Check::Exact));
    });

    guard(rows, "modal-decay", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 129, 1023 * 5e-4, 1024);
        InitialDatum u0{g.space(), std::vector<double>(g.m())};
        for (std::size_t i = 0; i < g.m(); ++i)
            u0.values[i] = std::sin(kPi * g.x(i)) + std::sin(2 * kPi * g.x(i));
        const auto e = extend_initial(u0, heat, g);
        for (std::size_t j : {std::size_t{100}, std::size_t{200}}) {
            const double t = g.t(j);
            InitialDatum slice{g.space(), e.time_slice(j)};
            char q[48];
            std::snprintf(q, sizeof q, "L2 norm at t=%.2f", t);
            rows.push_back(SuiteRow::make("modal-decay", q,
                                          std::sqrt(0.5 * (std::exp(-2 * kPi * kPi * t) + std::exp(-8 * kPi * kPi * t))),
                                          slice.l2_norm(), 0.01, Check::Rel));
        }
    });

    guard(rows, "decomposition", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 65, 1.0, 513);
        const auto u = SampledField2D::sample(g, [](double x, double t) { return std::exp(-kPi * kPi * t) * std::sin(kPi * x); });
        const auto d = x_norm_upper(u, heat);
        rows.push_back(SuiteRow::make("decomposition", "heat evolution: max|u1|/max|u|", 0.0,
                                      max_abs(d.u1.values) / max_abs(u.values), 1e-2, Check::AtMost));
        const auto late = SampledField2D::sample(g, [](double x, double t) {
            const double r = (t - 0.5) / 0.2;
            return std::abs(r) < 1 ? std::sin(kPi * x) * std::exp(-1 / (1 - r * r)) : 0.0;
        });
        const auto dl = x_norm_upper(late, heat);
        rows.push_back(SuiteRow::make("decomposition", "late bump: max|u2|", 0.0, max_abs(dl.u2.values), 1e-12,
                                      Check::AtMost));
        // Moving a bump supported in t > 0 between the parts leaves the trace unchanged.
        const auto bump = SampledField2D::sample(g, [](double x, double t) {
            const double r = (t - 0.3) / 0.1;
            return std::abs(r) < 1 ? x * (1 - x) * std::exp(-1 / (1 - r * r)) : 0.0;
        });
        const auto a = make_decomposition(d.u1 + bump, d.u2 - bump, 2.0);
        rows.push_back(SuiteRow::make("decomposition", "trace difference of two decompositions", 0.0,
                                      datum_l2_diff(trace_initial(a), trace_initial(d)), 1e-8, Check::AtMost));
        const auto z = make_decomposition(u, SampledField2D::zeros(g), 2.0);
        rows.push_back(SuiteRow::make("decomposition", "u2=0 trace norm", 0.0, trace_initial(z).l2_norm(), 0.0,
                                      Check::Exact));
    });

    guard(rows, "hardy-vanishing", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 33, 2.0, 401);
        const auto bounded = hardy_vanishing_check(
            SampledField2D::sample(g, [](double x, double t) { return t * std::sin(kPi * x) * std::exp(-t); }));
        const auto jump = hardy_vanishing_check(
            SampledField2D::sample(g, [](double x, double) { return std::sin(kPi * x); }));
        const auto zero = hardy_vanishing_check(SampledField2D::zeros(g));
        rows.push_back(SuiteRow::make("hardy-vanishing", "t sin e^-t verdict Vanishes", 1.0,
                                      bounded.verdict == HardyVerdict::Vanishes ? 1.0 : 0.0, 0.0, Check::Exact));
        rows.push_back(SuiteRow::make("hardy-vanishing", "jump verdict Diverges", 1.0,
                                      jump.verdict == HardyVerdict::Diverges ? 1.0 : 0.0, 0.0, Check::Exact));
        rows.push_back(SuiteRow::make("hardy-vanishing", "jump growth per halving / (int u(x,0)^2 ln 2)", 1.0,
                                      jump.growth / (0.5 * std::log(2.0)), 0.05, Check::Rel));
        rows.push_back(SuiteRow::make("hardy-vanishing", "zero verdict Zero", 1.0,
                                      zero.verdict == HardyVerdict::Zero ? 1.0 : 0.0, 0.0, Check::Exact));
    });

    guard(rows, "forward-support", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 65, 8.0, 801);
        const auto bump = SampledField2D::sample(g, [](double x, double t) {
            const double r = ((x - 0.5) * (x - 0.5) + (t - 2) * (t - 2)) / 0.01;
            return (r < 1 && t >= 2) ? std::exp(-1 / (1 - r)) : 0.0;
        });
        const double norm = field_lp_norm(bump, 2.0);
        for (double sv : {0.25, 0.5, 1.0}) {
            const auto v = lateral_trace_multiplier(bump, sv);
            char q[48];
            std::snprintf(q, sizeof q, "leaked mass fraction s=%g", sv);
            rows.push_back(SuiteRow::make("forward-support", q, 0.0, leaked_mass_fraction(bump, v), 1e-6,
                                          Check::AtMost));
            std::snprintf(q, sizeof q, "||m_s u||/||u|| s=%g", sv);
            rows.push_back(SuiteRow::make("forward-support", q, 1.0, field_lp_norm(v, 2.0) / norm, 1.0,
                                          Check::AtMost));
        }
        const auto id = lateral_trace_multiplier(bump, 0.0);
        rows.push_back(SuiteRow::make("forward-support", "s=0 max|m_0 u - u|", 0.0, field_max_abs_diff(id, bump),
                                      1e-12, Check::AtMost));
    });

    guard(rows, "lateral-trace", [&] {
        const SpaceTimeGrid g(0.0, 1.0, 33, 10.0, 1001);
        auto phi = [](double t) { return t * t * std::exp(-t); };
        const auto u = SampledField2D::sample(g, [&](double x, double t) { return x * phi(t); });
        const auto tr = lateral_trace_p2(u);
        double right = 0.0;
        for (std::size_t j = 0; j < g.n(); ++j) right = std::max(right, std::abs(tr.right[j] - phi(g.t(j))));
        rows.push_back(SuiteRow::make("lateral-trace", "x phi: max|right - phi|", 0.0, right, 1e-12, Check::AtMost));
        rows.push_back(SuiteRow::make("lateral-trace", "x phi: max|left|", 0.0, max_abs(tr.left.values), 1e-12,
                                      Check::AtMost));
        bool threw = false;
        try {
            lateral_trace_p2(u, 3.0);
        } catch (const Unsupported&) {
            threw = true;
        }
        rows.push_back(SuiteRow::make("lateral-trace", "p=3 raises Unsupported", 1.0, threw ? 1.0 : 0.0, 0.0,
                                      Check::Exact));

        double prev = 0.0;
        for (std::size_t n : {std::size_t{257}, std::size_t{513}}) {
            const SpaceTimeGrid h(0.0, 1.0, 33, 4.0, n);
            const auto c = heat_manufactured(h, 1e-11);
            const auto res = solve_nonhomogeneous(c.problem);
            const auto d = x_norm_upper(res.u, heat);
            const auto lt = lateral_trace_p2(d);
            const double val = lt.left_seminorm_sq + lt.right_seminorm_sq;
            if (n == 513)
                rows.push_back(SuiteRow::make("lateral-trace", "trace seminorm change under dt halving", 0.0,
                                              std::abs(val - prev) / std::max(std::abs(prev), 1e-300), 0.05,
                                              Check::AtMost));
            prev = val;
        }
    });

    guard(rows, "norm-stability", [&] {
        double prev = 0.0;
        for (std::size_t n : {std::size_t{257}, std::size_t{513}}) {
            const SpaceTimeGrid h(0.0, 1.0, 33, 2.0, n);
            const auto u = SampledField2D::sample(h, [](double x, double t) {
                return std::sin(kPi * x) * (1.0 + t) * std::exp(-2 * t) + x * (1 - x) * t * std::exp(-t);
            });
            const double val = x_norm_upper(u, heat).norm_upper;
            if (n == 513)
                rows.push_back(SuiteRow::make("norm-stability", "norm_upper change under dt halving", 0.0,
                                              std::abs(val - prev) / prev, 0.05, Check::AtMost));
            prev = val;
        }
    });
    return rows;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"fraccalc", "seminorms", "flux", "solver", "traces", "all"};
    return names;
}

std::vector<SuiteRow> run_suite(const std::string& name, const SuiteSettings& settings) {
    if (name == "fraccalc") return fraccalc_suite(settings);
    if (name == "seminorms") return seminorms_suite(settings);
    if (name == "flux") return flux_suite(settings);
    if (name == "solver") return solver_suite(settings);
    if (name == "traces") return traces_suite(settings);
    if (name == "all") {
        std::vector<SuiteRow> rows;
        for (const auto& n : suite_names()) {
            if (n == "all") continue;
            auto part = run_suite(n, settings);
            rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
        return rows;
    }
    throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace halfwave
