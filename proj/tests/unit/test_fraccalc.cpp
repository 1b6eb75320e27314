#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "halfwave/error.hpp"
#include "halfwave/fraccalc.hpp"

using namespace halfwave;

namespace {

constexpr double kPi = std::numbers::pi;

double gaussian(double t) { return std::exp(-kPi * t * t); }

// (-1)^k binom(a, k) from the Gamma function, independent of the recursion.
double binom_weight(double a, int k) {
    return std::tgamma(k - a) / (std::tgamma(-a) * std::tgamma(k + 1.0));
}

// D_+^a of e^{-pi t^2} by direct quadrature of the inverse Fourier integral
//   int (i 2 pi xi)^a e^{-pi xi^2} e^{i 2 pi xi t} d xi.
double fourier_half_derivative(double t, double a) {
    const int n = 20000;
    const double L = 7.0, h = 2 * L / n;
    std::complex<double> s = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double xi = -L + k * h;
        if (xi == 0.0) continue;
        const std::complex<double> sym =
            std::pow(std::abs(2 * kPi * xi), a) * std::exp(std::complex<double>(0, kPi * a / 2 * (xi > 0 ? 1 : -1)));
        const double w = (k == 0 || k == n) ? 0.5 : 1.0;
        s += w * sym * gaussian(xi) * std::exp(std::complex<double>(0, 2 * kPi * xi * t));
    }
    return (s * h).real();
}

// (1/pi) PV int u(s)/(t - s) ds written as int_0^inf (u(t - r) - u(t + r))/r dr.
double pv_hilbert(const std::function<double(double)>& u, double t) {
    const int n = 400000;
    const double R = 40.0, h = R / n;
    double s = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double r = (k - 0.5) * h;
        s += (u(t - r) - u(t + r)) / r;
    }
    return s * h / kPi;
}

}  // namespace

TEST_SUITE("fraccalc") {

TEST_CASE("GL weights match the binomial closed form") {
    for (double a : {0.25, 0.5, 0.8, 1.0}) {
        const auto w = GLWeights::make(a, 40, 0.1);
        CHECK(w.weights()[0] == 1.0);
        CHECK(w.weights()[1] == doctest::Approx(-a));
        CHECK(w.scale() == doctest::Approx(std::pow(0.1, -a)));
        if (a < 1.0) {
            for (int k = 2; k < 40; ++k) CHECK(w.weights()[k] == doctest::Approx(binom_weight(a, k)).epsilon(1e-11));
        } else {
            for (int k = 2; k < 40; ++k) CHECK(w.weights()[k] == 0.0);
        }
    }
}

TEST_CASE("GL derivative of t is the Riemann-Liouville value 2 sqrt(t/pi)") {
    const auto g = Grid1D::uniform(0.0, 2.0, 2001);
    const auto u = SampledFunction1D::sample(g, [](double t) { return t; });
    const auto v = gl_derivative(u, FracOrder::forward(0.5));
    for (std::size_t k = 500; k < g.size(); k += 250) {
        CHECK(v[k] == doctest::Approx(2 * std::sqrt(g.at(k) / kPi)).epsilon(2e-3));
    }
}

TEST_CASE("forward GL of a constant: edge spike then near zero") {
    const auto g = Grid1D::uniform(0.0, 1.0, 101);
    const auto u = SampledFunction1D::sample(g, [](double) { return 1.0; });
    const auto v = gl_derivative(u, FracOrder::forward(1.0));
    CHECK(v[0] == doctest::Approx(1.0 / g.dt()));
    for (std::size_t k = 1; k < g.size(); ++k) CHECK(v[k] == 0.0);
}

TEST_CASE("composition and transpose are exact") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N;
    const auto g = Grid1D::uniform(0.0, 3.0, 300);
    std::vector<double> a(g.size()), b(g.size());
    for (auto& x : a) x = N(rng);
    for (auto& x : b) x = N(rng);
    const SampledFunction1D u(g, a), v(g, b);
    for (auto [p, q] : {std::pair{0.5, 0.5}, std::pair{0.2, 0.7}, std::pair{0.4, 0.4}}) {
        const auto lhs = gl_derivative(gl_derivative(u, FracOrder::forward(p)), FracOrder::forward(q));
        const auto rhs = gl_derivative(u, FracOrder::forward(p + q));
        double scale = 0.0, err = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            scale = std::max(scale, std::abs(rhs[k]));
            err = std::max(err, std::abs(lhs[k] - rhs[k]));
        }
        CHECK(err <= 1e-12 * scale);
    }
    // <M+ u, v> = <u, M- v>
    const auto fu = gl_derivative(u, FracOrder::forward(0.5));
    const auto bv = gl_derivative(v, FracOrder::backward(0.5));
    double l = 0.0, r = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        l += fu[k] * v[k];
        r += u[k] * bv[k];
    }
    CHECK(l == doctest::Approx(r).epsilon(1e-12));
    CHECK(adjointness_defect(FracOrder::forward(0.5), 64) == 0.0);
    CHECK(adjointness_defect(FracOrder::forward(0.3), 4) == 0.0);
}

TEST_CASE("GL matrix is lower-triangular Toeplitz") {
    const auto m = gl_matrix(FracOrder::forward(0.5), 6, 1.0);
    const auto w = GLWeights::make(0.5, 6, 1.0);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(m[i * 6 + j] == (j <= i ? w.weights()[i - j] : 0.0));
}

TEST_CASE("spectral half derivative matches the Fourier integral") {
    const auto g = Grid1D::uniform(-8.0, 8.0, 1024);
    const auto u = SampledFunction1D::sample(g, gaussian);
    // Unpadded, the |t|^-3/2 tails of the periodic images shift the result by about 1e-2.
    SpectralOptions opts;
    opts.pad_factor = 64;
    const auto v = spectral_derivative(u, FracOrder::forward(0.5), opts);
    for (std::size_t k : {300u, 480u, 512u, 560u, 700u}) {
        CHECK(v[k] == doctest::Approx(fourier_half_derivative(g.at(k), 0.5)).epsilon(1e-4).scale(1.0));
    }
}

TEST_CASE("spectral first derivative is the classical derivative") {
    const auto g = Grid1D::uniform(-8.0, 8.0, 1024);
    const auto u = SampledFunction1D::sample(g, gaussian);
    const auto v = spectral_derivative(u, FracOrder::forward(1.0));
    for (std::size_t k = 0; k < g.size(); k += 17) {
        const double t = g.at(k);
        CHECK(v[k] == doctest::Approx(-2 * kPi * t * gaussian(t)).scale(1.0).epsilon(1e-9));
    }
}

TEST_CASE("Hilbert transform matches principal-value quadrature") {
    const auto g = Grid1D::uniform(-40.0, 40.0, 4096);
    auto f = [](double t) { return std::cos(2 * kPi * t) * std::exp(-t * t / 16.0); };
    const auto u = SampledFunction1D::sample(g, f);
    const auto h = hilbert_transform(u);
    for (std::size_t k : {1900u, 2048u, 2100u, 2300u}) {
        CHECK(h[k] == doctest::Approx(pv_hilbert(f, g.at(k))).scale(1.0).epsilon(1e-5));
    }
}

TEST_CASE("multiplier identities") {
    const auto g = Grid1D::uniform(-8.0, 8.0, 1024);
    const auto u = SampledFunction1D::sample(g, [](double t) { return t * gaussian(t); });
    const auto a = apply_multiplier(u, derivative_symbol(FracOrder::forward(0.5)) * h_alpha_symbol(0.5));
    const auto b = spectral_derivative(u, FracOrder::backward(0.5));
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).scale(1.0).epsilon(1e-12));
    const auto z = h_alpha(u, 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(z[k] == doctest::Approx(u[k]).scale(1.0).epsilon(1e-14));
}

TEST_CASE("decay check and argument errors") {
    const auto g = Grid1D::uniform(0.0, 1.0, 64);
    const auto u = SampledFunction1D::sample(g, [](double t) { return 1.0 + t; });
    CHECK_THROWS_AS(spectral_derivative(u, FracOrder::forward(0.5)), DecayViolation);
    try {
        hilbert_transform(u);
    } catch (const DecayViolation& e) {
        CHECK(e.boundary_ratio() == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(gl_derivative(u, FracOrder::forward(1.5)), InvalidArgument);
    CHECK_THROWS_AS(gl_derivative(u, FracOrder::forward(0.0)), InvalidArgument);
    CHECK_THROWS_AS(Grid1D::uniform(0.0, 1.0, 1), InvalidArgument);
    CHECK_THROWS_AS(adjointness_defect(FracOrder::forward(0.5), 3), InvalidArgument);
}

}  // TEST_SUITE
