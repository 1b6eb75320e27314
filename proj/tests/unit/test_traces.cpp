#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "halfwave/error.hpp"
#include "halfwave/flux.hpp"
#include "halfwave/traces.hpp"

using namespace halfwave;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const SampledField2D& a, const SampledField2D& b) {
    double e = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) e = std::max(e, std::abs(a.values[k] - b.values[k]));
    return e;
}

}  // namespace

TEST_SUITE("traces") {

TEST_CASE("initial slice ignores the t = 0 row and recovers smooth data") {
    const SpaceTimeGrid g(0.0, 1.0, 33, 1.0, 257);
    auto u = SampledField2D::sample(g, [](double x, double t) { return std::sin(kPi * x) * (1 + t); });
    for (std::size_t i = 0; i < g.m(); ++i) u(i, 0) = 123.0;
    const auto s = initial_slice(u);
    for (std::size_t i = 0; i < g.m(); ++i) CHECK(s.values[i] == doctest::Approx(std::sin(kPi * g.x(i))).scale(1.0).epsilon(1e-10));
    CHECK(s.l2_norm() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));
}

TEST_CASE("heat extension follows the discrete modal decay") {
    const SpaceTimeGrid g(0.0, 1.0, 65, 0.5, 501);
    InitialDatum d{g.space(), {}};
    for (std::size_t i = 0; i < g.m(); ++i) d.values.push_back(std::sin(kPi * g.x(i)));
    const auto u = extend_initial(d, p_laplacian_flux(2.0), g);
    // Implicit Euler with the three-point Laplacian: amplification 1 / (1 + dt lambda_h).
    const double lam = 4.0 / (g.dx() * g.dx()) * std::pow(std::sin(kPi * g.dx() / 2), 2);
    const auto exact = SampledField2D::sample(g, [&](double x, double t) {
        return std::sin(kPi * x) * std::pow(1.0 + g.dt() * lam, -std::round(t / g.dt()));
    });
    CHECK(max_diff(u, exact) <= 1e-8);
    // and the continuous decay e^{-pi^2 t} up to the first-order time error
    const auto cont = SampledField2D::sample(g, [](double x, double t) { return std::sin(kPi * x) * std::exp(-kPi * kPi * t); });
    CHECK(max_diff(u, cont) <= 5e-3);
}

TEST_CASE("trace of the extension is the datum") {
    const SpaceTimeGrid g(0.0, 1.0, 65, 0.1, 1025);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> N;
    for (double p : {2.0, 3.0}) {
        InitialDatum d{g.space(), {}};
        double c[4];
        for (double& v : c) v = N(rng);
        for (std::size_t i = 0; i < g.m(); ++i) {
            double v = 0.0;
            for (int k = 0; k < 4; ++k) v += c[k] * std::sin((k + 1) * kPi * g.x(i)) / ((k + 1) * (k + 1));
            d.values.push_back(v);
        }
        const auto u = extend_initial(d, p_laplacian_flux(p), g);
        const auto s = initial_slice(u);
        double e = 0.0, n = 0.0;
        for (std::size_t i = 0; i < g.m(); ++i) {
            e += std::pow(s.values[i] - d.values[i], 2);
            n += d.values[i] * d.values[i];
        }
        INFO("p = ", p);
        CHECK(std::sqrt(e / n) <= 1e-3);
    }
    InitialDatum zero{g.space(), std::vector<double>(g.m(), 0.0)};
    const auto z = extend_initial(zero, p_laplacian_flux(3.0), g);
    for (double v : z.values) CHECK(v == 0.0);
}

TEST_CASE("Hardy vanishing verdicts") {
    const SpaceTimeGrid g(0.0, 1.0, 17, 1.0, 1025);
    CHECK(hardy_vanishing_check(SampledField2D::zeros(g)).verdict == HardyVerdict::Zero);
    const auto lin = SampledField2D::sample(g, [](double x, double t) { return std::sin(kPi * x) * t; });
    CHECK(hardy_vanishing_check(lin).verdict == HardyVerdict::Vanishes);
    const auto jump = SampledField2D::sample(g, [](double x, double) { return std::sin(kPi * x); });
    const auto h = hardy_vanishing_check(jump);
    CHECK(h.verdict == HardyVerdict::Diverges);
    // int_dt u^2 / t dt grows by ln 2 int u(x, 0)^2 dx = ln 2 / 2 per halving of dt.
    CHECK(h.growth == doctest::Approx(std::log(2.0) * 0.5).epsilon(0.02));
    CHECK(h.growth_ratio == doctest::Approx(1.0).epsilon(0.05));
    CHECK_THROWS_AS(hardy_vanishing_check(SampledField2D::zeros(SpaceTimeGrid(0.0, 1.0, 5, 1.0, 8))), InvalidArgument);
}

TEST_CASE("lateral multiplier: identity at s = 0 and forward support") {
    const SpaceTimeGrid g(0.0, 1.0, 17, 2.0, 129);
    const auto u = SampledField2D::sample(g, [](double x, double t) {
        return t < 0.5 ? 0.0 : std::sin(kPi * x) * (t - 0.5) * std::exp(-30 * (t - 0.5));
    });
    const auto id = lateral_trace_multiplier(u, 0.0);
    CHECK(max_diff(id, u) <= 1e-12);
    for (double s : {0.25, 0.5, 1.0}) {
        const auto v = lateral_trace_multiplier(u, s);
        CHECK(leaked_mass_fraction(u, v) <= 1e-6);
    }
    const auto bad = SampledField2D::sample(g, [](double x, double) { return std::sin(kPi * x); });
    CHECK_THROWS_AS(lateral_trace_multiplier(bad, 0.5), DecayViolation);
}

TEST_CASE("decomposition and lateral traces") {
    const SpaceTimeGrid g(0.0, 1.0, 33, 0.5, 257);
    const auto u = SampledField2D::sample(g, [](double x, double t) { return (x + 0.5 * x * x) * (1 + t); });
    const auto d = x_norm_upper(u, p_laplacian_flux(2.0));
    CHECK(max_diff(d.u1 + d.u2, u) <= 1e-14);
    CHECK(d.norm_upper == doctest::Approx(d.u1_norm + d.u2_norm));
    const auto tr = lateral_trace_p2(u);
    for (std::size_t j = 0; j < g.n(); ++j) {
        // 2 u(dx) - u(2 dx) = -dx^2 for x + x^2 / 2
        CHECK(tr.left[j] == doctest::Approx(-g.dx() * g.dx() * (1 + g.t(j))).epsilon(1e-9));
        CHECK(tr.right[j] == doctest::Approx(1.5 * (1 + g.t(j))).epsilon(1e-3));
    }
    CHECK_THROWS_AS(lateral_trace_p2(u, 3.0), Unsupported);
    CHECK_THROWS_AS(lateral_trace_p2(d, 1.5), Unsupported);
}

TEST_CASE("time derivative dual norm of t sin(pi x)") {
    const SpaceTimeGrid g(0.0, 1.0, 401, 2.0, 21);
    const auto u = SampledField2D::sample(g, [](double x, double t) { return t * std::sin(kPi * x); });
    // u_t = sin(pi x) has the mean-free primitive -cos(pi x) / pi.
    CHECK(time_derivative_dual_norm(u, 2.0) == doctest::Approx(std::sqrt(2.0) / kPi * std::sqrt(0.5)).epsilon(1e-4));
}

}  // TEST_SUITE
