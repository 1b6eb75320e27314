#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "halfwave/error.hpp"
#include "halfwave/flux.hpp"

using namespace halfwave;

namespace {

std::vector<double> eval(const StructuralFlux& a, std::vector<double> xi) {
    std::vector<double> out(xi.size());
    a.eval(0.3, 0.7, xi, out);
    return out;
}

void require_clean(const FluxAuditReport& r) {
    CHECK(r.monotonicity_violations == 0);
    CHECK(r.coercivity_violations == 0);
    CHECK(r.boundedness_violations == 0);
    CHECK(r.passed());
}

}  // namespace

TEST_SUITE("flux") {

TEST_CASE("p-Laplacian values") {
    const auto p2 = eval(p_laplacian_flux(2.0), {3.0, -4.0});
    CHECK(p2[0] == 3.0);
    CHECK(p2[1] == -4.0);
    CHECK(eval(p_laplacian_flux(4.0), {1.0, 0.0})[0] == doctest::Approx(1.0));
    CHECK(eval(p_laplacian_flux(4.0), {2.0, 0.0})[0] == doctest::Approx(8.0));
    const auto z = eval(p_laplacian_flux(1.5), {0.0, 0.0});
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);
    // |xi|^(p-2) xi with |xi| = 5
    const auto q = eval(p_laplacian_flux(3.0), {3.0, 4.0});
    CHECK(q[0] == doctest::Approx(15.0));
    CHECK(q[1] == doctest::Approx(20.0));
    CHECK_THROWS_AS(p_laplacian_flux(1.0), InvalidArgument);
}

TEST_CASE("scalar slope matches a difference quotient") {
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
        const auto a = regularized_p_laplacian_flux(p, 1e-2);
        for (double xi : {-2.0, -0.1, 0.05, 1.3}) {
            const double h = 1e-6;
            const double fd = (a(0.0, 0.0, xi + h) - a(0.0, 0.0, xi - h)) / (2 * h);
            CHECK(a.slope(0.0, 0.0, xi) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("shipped fluxes pass the audit") {
    require_clean(audit_flux(p_laplacian_flux(3.0), 1, 20000));
    require_clean(audit_flux(p_laplacian_flux(1.5), 2, 20000));
    require_clean(audit_flux(regularized_p_laplacian_flux(1.5, 1e-3), 3, 20000));
    require_clean(audit_flux(regularized_p_laplacian_flux(4.0, 1e-3), 4, 20000));
    require_clean(audit_flux(
        weighted_p_laplacian_flux(2.5, [](double x, double t) { return 2.0 + std::sin(x + t); }, 1.0, 3.0), 5,
        20000));
}

TEST_CASE("linear flux constants are the extreme eigenvalues") {
    const auto a = linear_flux({2.0, 1.0, 1.0, 2.0}, 2);
    CHECK(a.lambda == doctest::Approx(1.0));
    CHECK(a.Lambda == doctest::Approx(3.0));
    require_clean(audit_flux(a, 9, 20000));
    CHECK_THROWS_AS(linear_flux({1.0, 2.0, 2.0, 1.0}, 2), InvalidArgument);
}

TEST_CASE("broken flux fails every monotonicity sample") {
    const auto r = audit_flux(broken_flux(), 1, 5000);
    CHECK(r.samples == 5000);
    CHECK(r.monotonicity_violations == 5000);
    CHECK_FALSE(r.passed());
}

TEST_CASE("audit is reproducible from the seed") {
    const auto a = audit_flux(p_laplacian_flux(1.5), 42, 9000);
    const auto b = audit_flux(p_laplacian_flux(1.5), 42, 9000);
    CHECK(a.weak_monotonicity == b.weak_monotonicity);
    CHECK(a.continuity_flags == b.continuity_flags);
}

TEST_CASE("shifted flux constants") {
    const double p = 3.0;
    const auto base = p_laplacian_flux(p);
    const auto s = shifted_flux(base, 1, [](double, double, std::span<double> g) { g[0] = 2.0; });
    CHECK(s.lambda == doctest::Approx(std::pow(2.0, -p)));
    CHECK(s.Lambda == doctest::Approx(2.0));
    const double delta = p / (2 * (p - 1));
    CHECK(s.h_bound(0.0, 0.0) == doctest::Approx(std::pow(2.0, p) / (p * std::pow(delta, p - 1)) + std::pow(2.0, p) / 2));
    CHECK(s.H_bound(0.0, 0.0) == doctest::Approx(2.0 * std::pow(2.0, p - 1)));
    CHECK(s(0.0, 0.0, 1.0) == doctest::Approx(9.0));
    require_clean(audit_flux(s, 3, 20000));
    const auto s15 = shifted_flux(p_laplacian_flux(1.5), 1, [](double x, double, std::span<double> g) { g[0] = x; });
    CHECK(s15.Lambda == doctest::Approx(1.0));
    require_clean(audit_flux(s15, 4, 20000));
}

TEST_CASE("regularized constants") {
    const auto a = regularized_p_laplacian_flux(4.0, 0.1);
    CHECK(a.lambda == 1.0);
    CHECK(a.Lambda == doctest::Approx(2.0));
    CHECK(a.H_bound(0, 0) == doctest::Approx(2.0 * 1e-3));
    const auto b = regularized_p_laplacian_flux(1.5, 0.1);
    CHECK(b.lambda == doctest::Approx(std::pow(2.0, -0.25)));
    CHECK(b.h_bound(0, 0) == doctest::Approx(b.lambda * std::pow(0.1, 1.5)));
}

TEST_CASE("flux_by_name") {
    CHECK(flux_by_name("p_laplacian", 3.0).p == 3.0);
    CHECK(flux_by_name("regularized_p_laplacian", 3.0, 0.1).name.find("regularized") != std::string::npos);
    CHECK_THROWS_AS(flux_by_name("regularized_p_laplacian", 3.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(flux_by_name("nope", 3.0), InvalidArgument);
}

}  // TEST_SUITE
