#include "halfwave/flux.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "halfwave/error.hpp"
#include "halfwave/parallel.hpp"

namespace halfwave {

namespace {

double norm_sq(std::span<const double> v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

StructuralFlux::Bound constant_bound(double c) {
    return [c](double, double) { return c; };
}

void require_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw InvalidArgument("flux exponent p must lie in (1, inf)");
    }
}

// s (I + c xi xi^T / r2) written into jac.
void radial_jacobian(double s, double c, double r2, std::span<const double> xi,
                     std::span<double> jac) {
    const std::size_t d = xi.size();
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            const double outer = r2 > 0.0 ? c * xi[a] * xi[b] / r2 : 0.0;
            jac[a * d + b] = s * ((a == b ? 1.0 : 0.0) + outer);
        }
    }
}

// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t d) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) off += a[i * d + j] * a[i * d + j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a[p * d + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < d; ++k) {
                    const double akp = a[k * d + p];
                    const double akq = a[k * d + q];
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double apk = a[p * d + k];
                    const double aqk = a[q * d + k];
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(d);
    for (std::size_t i = 0; i < d; ++i) ev[i] = a[i * d + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

void StructuralFlux::validate() const {
    require_p(p);
    if (!(lambda > 0.0) || !(Lambda >= lambda)) {
        throw InvalidArgument("flux constants need 0 < lambda <= Lambda");
    }
    if (!eval || !h_bound || !H_bound) {
        throw InvalidArgument("flux '" + name + "' is missing its evaluation or bound functions");
    }
}

double StructuralFlux::operator()(double x, double t, double xi) const {
    const std::array<double, 1> in{xi};
    std::array<double, 1> out{};
    eval(x, t, in, out);
    return out[0];
}

double StructuralFlux::slope(double x, double t, double xi) const {
    if (jacobian) {
        const std::array<double, 1> in{xi};
        std::array<double, 1> jac{};
        jacobian(x, t, in, jac);
        return jac[0];
    }
    const double h = 1e-6 * std::max(1.0, std::abs(xi));
    return ((*this)(x, t, xi + h) - (*this)(x, t, xi - h)) / (2.0 * h);
}

StructuralFlux p_laplacian_flux(double p) {
    require_p(p);
    StructuralFlux f;
    f.name = "p_laplacian";
    f.p = p;
    f.eval = [p](double, double, std::span<const double> xi, std::span<double> out) {
        const double r2 = norm_sq(xi);
        const double s = r2 > 0.0 ? std::pow(r2, 0.5 * (p - 2.0)) : 0.0;
        for (std::size_t k = 0; k < xi.size(); ++k) out[k] = s * xi[k];
    };
    f.jacobian = [p](double, double, std::span<const double> xi, std::span<double> jac) {
        const double r2 = norm_sq(xi);
        double s;
        if (r2 > 0.0) {
            s = std::pow(r2, 0.5 * (p - 2.0));
        } else {
            s = p > 2.0 ? 0.0 : (p == 2.0 ? 1.0 : std::numeric_limits<double>::infinity());
        }
        radial_jacobian(s, p - 2.0, r2, xi, jac);
    };
    f.h_bound = constant_bound(0.0);
    f.H_bound = constant_bound(0.0);
    if (p != 2.0) {
        f.regularize = [p](double eps) { return regularized_p_laplacian_flux(p, eps); };
    }
    return f;
}

StructuralFlux regularized_p_laplacian_flux(double p, double eps) {
    require_p(p);
    if (!(eps > 0.0)) throw InvalidArgument("regularization needs eps > 0");
    StructuralFlux f;
    f.name = "regularized_p_laplacian";
    f.p = p;
    const double e2 = eps * eps;
    f.eval = [p, e2](double, double, std::span<const double> xi, std::span<double> out) {
        const double s = std::pow(e2 + norm_sq(xi), 0.5 * (p - 2.0));
        for (std::size_t k = 0; k < xi.size(); ++k) out[k] = s * xi[k];
    };
    f.jacobian = [p, e2](double, double, std::span<const double> xi, std::span<double> jac) {
        const double r2e = e2 + norm_sq(xi);
        radial_jacobian(std::pow(r2e, 0.5 * (p - 2.0)), p - 2.0, r2e, xi, jac);
    };
    if (p >= 2.0) {
        f.lambda = 1.0;
        f.Lambda = std::pow(2.0, 0.5 * (p - 2.0));
        f.h_bound = constant_bound(0.0);
        f.H_bound = constant_bound(f.Lambda * std::pow(eps, p - 1.0));
    } else {
        f.lambda = std::pow(2.0, 0.5 * (p - 2.0));
        f.Lambda = 1.0;
        f.h_bound = constant_bound(f.lambda * std::pow(eps, p));
        f.H_bound = constant_bound(0.0);
    }
    return f;
}

StructuralFlux weighted_p_laplacian_flux(double p, std::function<double(double, double)> a,
                                         double a_min, double a_max) {
    require_p(p);
    if (!(a_min > 0.0) || !(a_max >= a_min) || !a) {
        throw InvalidArgument("weighted flux needs a coefficient with 0 < a_min <= a_max");
    }
    const auto base = p_laplacian_flux(p);
    StructuralFlux f;
    f.name = "weighted_p_laplacian";
    f.p = p;
    f.lambda = a_min;
    f.Lambda = a_max;
    f.eval = [base, a](double x, double t, std::span<const double> xi, std::span<double> out) {
        base.eval(x, t, xi, out);
        const double c = a(x, t);
        for (double& v : out) v *= c;
    };
    f.jacobian = [base, a](double x, double t, std::span<const double> xi, std::span<double> jac) {
        base.jacobian(x, t, xi, jac);
        const double c = a(x, t);
        for (double& v : jac) v *= c;
    };
    f.h_bound = constant_bound(0.0);
    f.H_bound = constant_bound(0.0);
    if (p != 2.0) {
        f.regularize = [p, a, a_min, a_max](double eps) {
            const auto reg = regularized_p_laplacian_flux(p, eps);
            StructuralFlux g = weighted_p_laplacian_flux(p, a, a_min, a_max);
            g.name = "regularized_weighted_p_laplacian";
            g.eval = [reg, a](double x, double t, std::span<const double> xi, std::span<double> out) {
                reg.eval(x, t, xi, out);
                const double c = a(x, t);
                for (double& v : out) v *= c;
            };
            g.jacobian = [reg, a](double x, double t, std::span<const double> xi,
                                  std::span<double> jac) {
                reg.jacobian(x, t, xi, jac);
                const double c = a(x, t);
                for (double& v : jac) v *= c;
            };
            g.lambda = a_min * reg.lambda;
            g.Lambda = a_max * reg.Lambda;
            const double h = a_max * reg.h_bound(0.0, 0.0);
            const double H = a_max * reg.H_bound(0.0, 0.0);
            g.h_bound = constant_bound(h);
            g.H_bound = constant_bound(H);
            g.regularize = nullptr;
            return g;
        };
    }
    return f;
}

StructuralFlux linear_flux(std::vector<double> matrix, std::size_t dim) {
    if (dim == 0 || matrix.size() != dim * dim) {
        throw InvalidArgument("linear_flux needs a dim x dim matrix");
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            const double a = matrix[i * dim + j];
            const double b = matrix[j * dim + i];
            if (std::abs(a - b) > 1e-14 * (std::abs(a) + std::abs(b))) {
                throw InvalidArgument("linear_flux needs a symmetric matrix");
            }
        }
    }
    const auto ev = symmetric_eigenvalues(matrix, dim);
    if (!(ev.front() > 0.0)) throw InvalidArgument("linear_flux needs a positive definite matrix");
    StructuralFlux f;
    f.name = "linear";
    f.p = 2.0;
    f.dim = dim;
    f.lambda = ev.front();
    f.Lambda = ev.back();
    f.eval = [matrix, dim](double, double, std::span<const double> xi, std::span<double> out) {
        for (std::size_t i = 0; i < dim; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < dim; ++j) s += matrix[i * dim + j] * xi[j];
            out[i] = s;
        }
    };
    f.jacobian = [matrix](double, double, std::span<const double>, std::span<double> jac) {
        std::copy(matrix.begin(), matrix.end(), jac.begin());
    };
    f.h_bound = constant_bound(0.0);
    f.H_bound = constant_bound(0.0);
    return f;
}

StructuralFlux broken_flux() {
    StructuralFlux f;
    f.name = "broken";
    f.p = 2.0;
    f.eval = [](double, double, std::span<const double> xi, std::span<double> out) {
        for (std::size_t k = 0; k < xi.size(); ++k) out[k] = -xi[k];
    };
    f.jacobian = [](double, double, std::span<const double> xi, std::span<double> jac) {
        radial_jacobian(-1.0, 0.0, 0.0, xi, jac);
    };
    f.h_bound = constant_bound(0.0);
    f.H_bound = constant_bound(0.0);
    return f;
}

StructuralFlux shifted_flux(const StructuralFlux& a, std::size_t dim,
                            std::function<void(double, double, std::span<double>)> g) {
    a.validate();
    if (dim == 0 || (a.dim != 0 && a.dim != dim)) {
        throw InvalidArgument("shifted_flux: dimension mismatch");
    }
    const double p = a.p;
    const double scale = std::max(1.0, std::pow(2.0, p - 2.0));
    const double delta = a.lambda * p / (2.0 * (p - 1.0));
    auto g_norm = [g, dim](double x, double t) {
        std::vector<double> v(dim);
        g(x, t, v);
        return std::sqrt(norm_sq(v));
    };

    StructuralFlux f;
    f.name = "shifted_" + a.name;
    f.p = p;
    f.dim = dim;
    f.lambda = a.lambda * std::pow(2.0, -p);
    f.Lambda = a.Lambda * scale;
    f.eval = [a, g, dim](double x, double t, std::span<const double> xi, std::span<double> out) {
        std::vector<double> z(dim);
        g(x, t, z);
        for (std::size_t k = 0; k < dim; ++k) z[k] += xi[k];
        a.eval(x, t, z, out);
    };
    if (a.jacobian) {
        f.jacobian = [a, g, dim](double x, double t, std::span<const double> xi,
                                 std::span<double> jac) {
            std::vector<double> z(dim);
            g(x, t, z);
            for (std::size_t k = 0; k < dim; ++k) z[k] += xi[k];
            a.jacobian(x, t, z, jac);
        };
    }
    const double lam = a.lambda, Lam = a.Lambda, Lam_new = f.Lambda;
    f.h_bound = [a, g_norm, p, lam, Lam, delta](double x, double t) {
        const double gn = g_norm(x, t);
        const double gp = std::pow(gn, p);
        return a.h_bound(x, t) + a.H_bound(x, t) * gn +
               std::pow(Lam, p) * gp / (p * std::pow(delta, p - 1.0)) + 0.5 * lam * gp;
    };
    f.H_bound = [a, g_norm, p, Lam_new](double x, double t) {
        return a.H_bound(x, t) + Lam_new * std::pow(g_norm(x, t), p - 1.0);
    };
    if (a.regularize) {
        f.regularize = [a, dim, g](double eps) { return shifted_flux(a.regularize(eps), dim, g); };
    }
    return f;
}

StructuralFlux flux_by_name(const std::string& name, double p, double eps) {
    if (name == "p_laplacian") return p_laplacian_flux(p);
    if (name == "regularized_p_laplacian") return regularized_p_laplacian_flux(p, eps);
    if (name == "broken") return broken_flux();
    throw InvalidArgument("unknown flux '" + name + "'");
}

// ---------------------------------------------------------------------------

FluxAuditReport audit_flux(const StructuralFlux& a, std::uint64_t seed, std::size_t samples,
                           const AuditOptions& opts) {
    a.validate();
    if (samples == 0) throw InvalidArgument("audit_flux needs at least one sample");
    const std::size_t d = a.dim != 0 ? a.dim : opts.dim;
    if (d == 0) throw InvalidArgument("audit dimension must be positive");

    constexpr std::size_t batch = 4096;
    const std::size_t batches = (samples + batch - 1) / batch;
    std::vector<FluxAuditReport> partial(batches);

    blocked_for(batches, 1, [&](std::size_t b0, std::size_t b1) {
        std::vector<double> xi(d), eta(d), diff(d), a_xi(d), a_eta(d), probe(d), a_probe(d);
        for (std::size_t b = b0; b < b1; ++b) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed),
                              static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(b)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> ux(opts.x_min, opts.x_max);
            std::uniform_real_distribution<double> ut(opts.t_min, opts.t_max);
            std::uniform_real_distribution<double> umag(opts.log_mag_min, opts.log_mag_max);
            std::normal_distribution<double> gauss(0.0, 1.0);
            auto draw = [&](std::vector<double>& v) {
                double r2 = 0.0;
                do {
                    for (double& c : v) c = gauss(rng);
                    r2 = norm_sq(v);
                } while (r2 == 0.0);
                const double scale = std::pow(10.0, umag(rng)) / std::sqrt(r2);
                for (double& c : v) c *= scale;
            };

            auto& rep = partial[b];
            const std::size_t count = std::min(batch, samples - b * batch);
            for (std::size_t s = 0; s < count; ++s) {
                const double x = ux(rng);
                const double t = ut(rng);
                draw(xi);
                draw(eta);
                a.eval(x, t, xi, a_xi);
                a.eval(x, t, eta, a_eta);
                const double h = a.h_bound(x, t);
                const double H = a.H_bound(x, t);
                ++rep.samples;

                for (std::size_t k = 0; k < d; ++k) diff[k] = xi[k] - eta[k];
                const double dd = norm_sq(diff);
                double q = 0.0;
                for (std::size_t k = 0; k < d; ++k) q += (a_xi[k] - a_eta[k]) * diff[k];
                if (!(q > 0.0)) {
                    ++rep.monotonicity_violations;
                } else if (q <= 1e-14 * dd) {
                    ++rep.weak_monotonicity;
                }

                auto coercive = [&](const std::vector<double>& v, const std::vector<double>& av) {
                    const double lhs = dot(av, v);
                    const double rhs = a.lambda * std::pow(norm_sq(v), 0.5 * a.p) - h;
                    const double tol = 1e-12 * (std::abs(lhs) + std::abs(rhs) + h);
                    return lhs >= rhs - tol;
                };
                if (!coercive(xi, a_xi) || !coercive(eta, a_eta)) ++rep.coercivity_violations;

                auto bounded = [&](const std::vector<double>& v, const std::vector<double>& av) {
                    const double lhs = std::sqrt(norm_sq(av));
                    const double rhs = a.Lambda * std::pow(norm_sq(v), 0.5 * (a.p - 1.0)) + H;
                    return lhs <= rhs * (1.0 + 1e-12);
                };
                if (!bounded(xi, a_xi) || !bounded(eta, a_eta)) ++rep.boundedness_violations;

                const double step = 1e-9 * std::sqrt(norm_sq(xi));
                probe = xi;
                probe[0] += step;
                a.eval(x, t, probe, a_probe);
                double moved = 0.0;
                for (std::size_t k = 0; k < d; ++k) moved += (a_probe[k] - a_xi[k]) * (a_probe[k] - a_xi[k]);
                const double ref = std::sqrt(norm_sq(a_xi)) +
                                   a.Lambda * std::pow(norm_sq(xi), 0.5 * (a.p - 1.0));
                if (!(std::sqrt(moved) <= 1e-4 * ref)) ++rep.continuity_flags;
            }
        }
    });

    FluxAuditReport total;
    for (const auto& r : partial) {
        total.monotonicity_violations += r.monotonicity_violations;
        total.coercivity_violations += r.coercivity_violations;
        total.boundedness_violations += r.boundedness_violations;
        total.weak_monotonicity += r.weak_monotonicity;
        total.continuity_flags += r.continuity_flags;
        total.samples += r.samples;
    }
    return total;
}

}  // namespace halfwave
