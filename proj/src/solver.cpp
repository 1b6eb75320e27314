#include "halfwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "halfwave/error.hpp"
#include "halfwave/fraccalc.hpp"
#include "halfwave/parallel.hpp"
#include "halfwave/seminorms.hpp"
#include "tridiag.hpp"

namespace halfwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DampedRun {
    std::vector<double> u;
    int iterations = 0;
    double norm = kInf;
    double initial_norm = kInf;
    std::vector<double> trace;
    int newton_from = -1;
    bool stalled = false;
};

// Secant (Picard) steps until the residual norm drops below switch_ratio of
// its initial value, Newton steps afterwards. Every step is backtracked until
// the residual norm decreases by the Armijo factor, so `trace` never grows.
template <class Norm, class Step>
void damped_iteration(DampedRun& run, double tol, int max_iter, double switch_ratio,
                      Norm&& norm_of, Step&& step) {
    double nr = norm_of(run.u);
    if (run.trace.empty()) {
        run.initial_norm = nr;
        run.trace.push_back(0.5 * nr * nr);
    }
    bool newton = run.newton_from >= 0;
    std::vector<double> trial(run.u.size());
    run.stalled = false;
    while (nr > tol && run.iterations < max_iter) {
        if (!newton && nr <= switch_ratio * run.initial_norm) {
            newton = true;
            run.newton_from = run.iterations;
        }
        const std::vector<double> d = step(run.u, newton);
        double tau = 1.0;
        bool accepted = false;
        for (int k = 0; k < 40; ++k) {
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = run.u[i] + tau * d[i];
            const double nt = norm_of(trial);
            if (nt <= (1.0 - 1e-4 * tau) * nr) {
                run.u.swap(trial);
                nr = nt;
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        ++run.iterations;
        if (!accepted) {
            if (!newton) {
                newton = true;
                run.newton_from = run.iterations;
                continue;
            }
            run.stalled = true;
            break;
        }
        run.trace.push_back(0.5 * nr * nr);
    }
    run.norm = nr;
}

// |u|^(p-2) u, or its eps-smoothed version when eps > 0.
double power_term(double u, double p, double eps) {
    if (p == 2.0) return u;
    if (eps > 0.0) return std::pow(eps * eps + u * u, 0.5 * (p - 2.0)) * u;
    if (u == 0.0) return 0.0;
    return std::pow(std::abs(u), p - 2.0) * u;
}

double power_slope(double u, double p, double eps) {
    if (p == 2.0) return 1.0;
    const double r2 = eps * eps + u * u;
    if (r2 == 0.0) return p > 2.0 ? 0.0 : kInf;
    return std::pow(r2, 0.5 * (p - 4.0)) * (eps * eps + (p - 1.0) * u * u);
}

}  // namespace

// ---------------------------------------------------------------------------
// Model operator

SampledFunction1D model_operator_apply(const SampledFunction1D& u, double p) {
    if (!(p > 1.0)) throw InvalidArgument("model operator needs p > 1");
    const double dt = u.grid.dt();
    std::vector<double> out(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double prev = j == 0 ? 0.0 : u.values[j - 1];
        out[j] = (u.values[j] - prev) / dt + power_term(u.values[j], p, 0.0);
    }
    return {u.grid, std::move(out)};
}

SampledFunction1D model_operator_solve(const SampledFunction1D& f, double p, double tol,
                                       const ModelSolveOptions& opts) {
    if (!(p > 1.0)) throw InvalidArgument("model operator needs p > 1");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    const std::size_t n = f.size();
    const double dt = f.grid.dt();
    double fmax = 0.0;
    for (double v : f.values) fmax = std::max(fmax, std::abs(v));
    double eps = p == 2.0 ? 0.0 : opts.eps_scale * std::max(1.0, fmax);

    auto norm_with = [&](double e) {
        return [&, e](const std::vector<double>& u) {
            CompensatedSum s;
            for (std::size_t j = 0; j < n; ++j) {
                const double prev = j == 0 ? 0.0 : u[j - 1];
                const double r = (u[j] - prev) / dt + power_term(u[j], p, e) - f.values[j];
                s.add(r * r);
            }
            return std::sqrt(s.value() * dt);
        };
    };
    auto step_with = [&](double e) {
        return [&, e](const std::vector<double>& u, bool newton) {
            // Lower bidiagonal: (1/dt + c_j) d_j - d_{j-1}/dt = -r_j.
            std::vector<double> d(n);
            double prev_d = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double prev = j == 0 ? 0.0 : u[j - 1];
                const double r = (u[j] - prev) / dt + power_term(u[j], p, e) - f.values[j];
                double c;
                if (newton || u[j] == 0.0) {
                    c = power_slope(u[j], p, e);
                } else {
                    c = power_term(u[j], p, e) / u[j];
                }
                d[j] = (-r + prev_d / dt) / (1.0 / dt + c);
                prev_d = d[j];
            }
            return d;
        };
    };

    DampedRun run;
    run.u.assign(n, 0.0);
    for (int round = 0;; ++round) {
        damped_iteration(run, tol, opts.max_iter, 1e-2, norm_with(eps), step_with(eps));
        const double true_norm = eps > 0.0 ? norm_with(0.0)(run.u) : run.norm;
        if (true_norm <= tol) break;
        if (eps > 0.0 && run.norm <= tol && round == 0) {
            // The smoothing is felt where |u| is comparable to eps: finish
            // with the exact term.
            eps = 0.0;
            continue;
        }
        throw NonConvergence("model operator solve did not reach tolerance", true_norm,
                             run.iterations);
    }
    return {f.grid, std::move(run.u)};
}

// ---------------------------------------------------------------------------
// Time form

TimeForm::TimeForm(const SpaceTimeGrid& grid) : grid_(grid) {
    const auto w = GLWeights::make(0.5, grid.n(), grid.dt());
    half_weights_.assign(w.weights().begin(), w.weights().end());
    for (double& v : half_weights_) v *= w.scale();
}

TimeForm assemble_time_form(const SpaceTimeGrid& grid) { return TimeForm(grid); }

namespace {

void require_grid(const SampledField2D& u, const SpaceTimeGrid& g, const char* what) {
    if (!u.grid.same_as(g) || u.values.size() != g.m() * g.n()) {
        throw InvalidArgument(std::string(what) + " is not sampled on the problem grid");
    }
}

void half_row(std::span<const double> w, std::span<const double> in, std::span<double> out,
              bool adjoint) {
    const std::size_t n = in.size();
    for (std::size_t j = 0; j < n; ++j) {
        CompensatedSum s;
        if (!adjoint) {
            for (std::size_t k = 0; k <= j; ++k) s.add(w[k] * in[j - k]);
        } else {
            for (std::size_t k = 0; j + k < n; ++k) s.add(w[k] * in[j + k]);
        }
        out[j] = s.value();
    }
}

}  // namespace

SampledField2D TimeForm::apply_first(const SampledField2D& u) const {
    require_grid(u, grid_, "field");
    auto out = SampledField2D::zeros(grid_);
    const double dt = grid_.dt();
    for (std::size_t i = 0; i < grid_.m(); ++i) {
        const auto in = u.row(i);
        auto o = out.row(i);
        for (std::size_t j = 0; j < grid_.n(); ++j) o[j] = (in[j] - (j == 0 ? 0.0 : in[j - 1])) / dt;
    }
    return out;
}

SampledField2D TimeForm::apply_half(const SampledField2D& u) const {
    require_grid(u, grid_, "field");
    auto out = SampledField2D::zeros(grid_);
    blocked_for(grid_.m(), 1, [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) half_row(half_weights_, u.row(i), out.row(i), false);
    });
    return out;
}

SampledField2D TimeForm::apply_half_adjoint(const SampledField2D& v) const {
    require_grid(v, grid_, "field");
    auto out = SampledField2D::zeros(grid_);
    blocked_for(grid_.m(), 1, [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) half_row(half_weights_, v.row(i), out.row(i), true);
    });
    return out;
}

namespace {

double weighted_dot(const SampledField2D& a, const SampledField2D& b) {
    CompensatedSum s;
    for (std::size_t k = 0; k < a.values.size(); ++k) s.add(a.values[k] * b.values[k]);
    return s.value() * a.grid.dx() * a.grid.dt();
}

}  // namespace

double TimeForm::pairing_first(const SampledField2D& u, const SampledField2D& v) const {
    require_grid(v, grid_, "field");
    return weighted_dot(apply_first(u), v);
}

double TimeForm::pairing_half(const SampledField2D& u, const SampledField2D& v) const {
    return weighted_dot(apply_half(u), apply_half_adjoint(v));
}

// ---------------------------------------------------------------------------
// Weak problems

SourceData SourceData::zero(const SpaceTimeGrid& grid) {
    SourceData s;
    s.u0 = SampledField2D::zeros(grid);
    return s;
}

SourceData SourceData::pointwise(SampledField2D f) {
    SourceData s;
    s.u0 = SampledField2D::zeros(f.grid);
    s.f_pt = std::move(f);
    return s;
}

namespace {

// Discrete weak system on the interior nodes i = 1..m-2, j = 1..n-1:
//   R_ij = dx (u_ij - u_i,j-1) + dt (A_{i-1/2,j} - A_{i+1/2,j}) - F_ij.
class FieldSystem {
public:
    explicit FieldSystem(const WeakProblem& prob) : prob_(prob), g_(prob.grid) {
        m_ = g_.m();
        n_ = g_.n();
        dx_ = g_.dx();
        dt_ = g_.dt();
        mid_.resize(m_ - 1);
        for (std::size_t c = 0; c + 1 < m_; ++c) mid_[c] = g_.x(c) + 0.5 * dx_;
        build_load();
    }

    std::size_t size() const { return m_ * n_; }

    void residual(const StructuralFlux& a, std::span<const double> u, std::span<double> r) const {
        std::fill(r.begin(), r.end(), 0.0);
        blocked_for(n_ - 1, 32, [&](std::size_t b0, std::size_t b1) {
            std::vector<double> flux(m_ - 1);
            for (std::size_t jj = b0; jj < b1; ++jj) {
                const std::size_t j = jj + 1;
                const double t = g_.t(j);
                for (std::size_t c = 0; c + 1 < m_; ++c) {
                    const double xi = (u[(c + 1) * n_ + j] - u[c * n_ + j]) / dx_;
                    flux[c] = a(mid_[c], t, xi);
                }
                for (std::size_t i = 1; i + 1 < m_; ++i) {
                    const std::size_t k = i * n_ + j;
                    r[k] = dx_ * (u[k] - u[k - 1]) + dt_ * (flux[i - 1] - flux[i]) - load_[k];
                }
            }
        });
    }

    double dual_norm(std::span<const double> r) const {
        const std::size_t k = m_ - 2;
        const double diag = dt_ * (dx_ + 2.0 / dx_);
        const double off = -dt_ / dx_;
        const double sq = blocked_sum(n_ - 1, 64, [&](std::size_t b0, std::size_t b1) {
            std::vector<double> sub(k, off), dg(k, diag), sup(k, off), z(k), scratch;
            CompensatedSum s;
            for (std::size_t jj = b0; jj < b1; ++jj) {
                const std::size_t j = jj + 1;
                for (std::size_t i = 1; i + 1 < m_; ++i) z[i - 1] = r[i * n_ + j];
                detail::thomas_solve(sub, dg, sup, z, scratch);
                for (std::size_t i = 1; i + 1 < m_; ++i) s.add(z[i - 1] * r[i * n_ + j]);
            }
            return s.value();
        });
        return std::sqrt(std::max(0.0, sq));
    }

    double norm(const StructuralFlux& a, std::span<const double> u) const {
        std::vector<double> r(size());
        residual(a, u, r);
        return dual_norm(r);
    }

    // Linearized correction: secant coefficients (A(xi) - A(0))/xi for the
    // Picard phase, dA/dxi for Newton. The linear system is block lower
    // bidiagonal in time and tridiagonal in space, so one causal sweep of
    // Thomas solves inverts it.
    std::vector<double> direction(const StructuralFlux& a, std::span<const double> u,
                                  bool newton) const {
        std::vector<double> r(size());
        residual(a, u, r);
        std::vector<double> d(size(), 0.0);
        const std::size_t k = m_ - 2;
        std::vector<double> coef(m_ - 1), sub(k), dg(k), sup(k), rhs(k), scratch;
        for (std::size_t j = 1; j < n_; ++j) {
            const double t = g_.t(j);
            for (std::size_t c = 0; c + 1 < m_; ++c) {
                const double xi = (u[(c + 1) * n_ + j] - u[c * n_ + j]) / dx_;
                double s;
                if (newton || xi == 0.0) {
                    s = a.slope(mid_[c], t, xi);
                } else {
                    s = (a(mid_[c], t, xi) - a(mid_[c], t, 0.0)) / xi;
                }
                coef[c] = std::isfinite(s) ? std::max(s, 0.0) : 1e300;
            }
            const double lam = dt_ / dx_;
            for (std::size_t i = 1; i + 1 < m_; ++i) {
                const std::size_t q = i - 1;
                sub[q] = -lam * coef[i - 1];
                sup[q] = -lam * coef[i];
                dg[q] = dx_ + lam * (coef[i - 1] + coef[i]);
                rhs[q] = -r[i * n_ + j] + dx_ * d[i * n_ + j - 1];
            }
            // Wall nodes carry no correction: drop their couplings.
            sub[0] = 0.0;
            sup[k - 1] = 0.0;
            detail::thomas_solve(sub, dg, sup, rhs, scratch);
            for (std::size_t i = 1; i + 1 < m_; ++i) d[i * n_ + j] = rhs[i - 1];
        }
        return d;
    }

private:
    void build_load() {
        load_.assign(size(), 0.0);
        const auto& src = prob_.source;
        if (src.f_pt) {
            require_grid(*src.f_pt, g_, "pointwise source");
            for (std::size_t k = 0; k < size(); ++k) load_[k] += dx_ * dt_ * src.f_pt->values[k];
        }
        if (!src.u0.values.empty()) {
            require_grid(src.u0, g_, "half-derivative source");
            const auto half = TimeForm(g_).apply_half(src.u0);
            for (std::size_t k = 0; k < size(); ++k) load_[k] += dx_ * dt_ * half.values[k];
        }
        if (src.ui.size() > 1) throw Unsupported("only one space dimension is implemented");
        if (src.ui.size() == 1) {
            const auto& v = src.ui.front();
            require_grid(v, g_, "divergence source");
            for (std::size_t j = 0; j < n_; ++j) {
                for (std::size_t i = 1; i + 1 < m_; ++i) {
                    const double right = 0.5 * (v(i, j) + v(i + 1, j));
                    const double left = 0.5 * (v(i - 1, j) + v(i, j));
                    load_[i * n_ + j] += dt_ * (right - left);
                }
            }
        }
    }

    const WeakProblem& prob_;
    SpaceTimeGrid g_;
    std::size_t m_ = 0, n_ = 0;
    double dx_ = 0.0, dt_ = 0.0;
    std::vector<double> mid_;
    std::vector<double> load_;
};

bool pinned(std::size_t i, std::size_t j, std::size_t m) { return i == 0 || i + 1 == m || j == 0; }

double max_cell_gradient(const SampledField2D& g) {
    double best = 0.0;
    const std::size_t m = g.grid.m(), n = g.grid.n();
    for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            best = std::max(best, std::abs(g(i + 1, j) - g(i, j)) / g.grid.dx());
    return best;
}

void validate_problem(const WeakProblem& prob) {
    prob.flux.validate();
    if (!(prob.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (prob.max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
    require_grid(prob.g, prob.grid, "datum g");
    if (prob.flux.dim > 1) throw Unsupported("flux dimension exceeds the one space dimension");
}

void run_audit(const StructuralFlux& flux, const SolverOptions& opts) {
    if (opts.audit_samples == 0) return;
    AuditOptions ao;
    ao.dim = 1;
    const auto rep = audit_flux(flux, opts.audit_seed, opts.audit_samples, ao);
    if (!rep.passed()) {
        throw FluxAuditFailure("flux '" + flux.name + "' failed the structural audit (" +
                               std::to_string(rep.monotonicity_violations) + " monotonicity, " +
                               std::to_string(rep.coercivity_violations) + " coercivity, " +
                               std::to_string(rep.boundedness_violations) +
                               " growth violations)");
    }
}

SolveResult run_solver(const WeakProblem& prob, const SolverOptions& opts) {
    validate_problem(prob);
    run_audit(prob.flux, opts);
    const FieldSystem sys(prob);
    const std::size_t m = prob.grid.m(), n = prob.grid.n();

    DampedRun run;
    if (opts.initial) {
        require_grid(*opts.initial, prob.grid, "initial iterate");
        run.u = opts.initial->values;
    } else {
        run.u = prob.g.values;
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (pinned(i, j, m)) run.u[i * n + j] = prob.g(i, j);

    double eps = 0.0;
    StructuralFlux work = prob.flux;
    if (prob.flux.regularize) {
        eps = opts.eps_scale * std::max(1.0, max_cell_gradient(prob.g));
        work = prob.flux.regularize(eps);
    }

    double true_norm = kInf;
    for (int round = 0;; ++round) {
        damped_iteration(
            run, prob.tol, prob.max_iter, opts.switch_ratio,
            [&](const std::vector<double>& u) { return sys.norm(work, u); },
            [&](const std::vector<double>& u, bool newton) { return sys.direction(work, u, newton); });
        true_norm = eps > 0.0 ? sys.norm(prob.flux, run.u) : run.norm;
        if (true_norm <= prob.tol) break;
        if (eps > 0.0 && run.norm <= prob.tol && round == 0) {
            eps = 0.0;
            work = prob.flux;
            continue;
        }
        throw NonConvergence("weak solve stopped at residual " + std::to_string(true_norm) +
                                 " after " + std::to_string(run.iterations) + " iterations",
                             true_norm, run.iterations);
    }

    SolveResult res;
    res.u = SampledField2D(prob.grid, std::move(run.u));
    res.iterations = run.iterations;
    res.residual_dual_norm = true_norm;
    res.regularized_residual = run.norm;
    res.energy_trace = std::move(run.trace);
    res.newton_from = run.newton_from;
    res.eps = eps;
    return res;
}

}  // namespace

SampledField2D weak_residual(const WeakProblem& prob, const StructuralFlux& flux,
                             const SampledField2D& u) {
    validate_problem(prob);
    require_grid(u, prob.grid, "field");
    const FieldSystem sys(prob);
    auto r = SampledField2D::zeros(prob.grid);
    sys.residual(flux, u.values, r.values);
    return r;
}

double residual_dual_norm(const SampledField2D& r) {
    WeakProblem dummy;
    dummy.grid = r.grid;
    dummy.flux = p_laplacian_flux(2.0);
    dummy.source = SourceData::zero(r.grid);
    dummy.g = SampledField2D::zeros(r.grid);
    const FieldSystem sys(dummy);
    return sys.dual_norm(r.values);
}

SolveResult solve_homogeneous(const WeakProblem& prob, const SolverOptions& opts) {
    for (double v : prob.g.values) {
        if (v != 0.0) throw InvalidArgument("solve_homogeneous needs g = 0");
    }
    return run_solver(prob, opts);
}

SolveResult solve_nonhomogeneous(const WeakProblem& prob, const SolverOptions& opts) {
    return run_solver(prob, opts);
}

double uniqueness_probe(const WeakProblem& prob, int trials, std::uint64_t seed) {
    if (trials < 2) throw InvalidArgument("uniqueness_probe needs at least two trials");
    double scale = 1.0;
    for (double v : prob.g.values) scale = std::max(scale, std::abs(v));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-scale, scale);

    std::vector<SampledField2D> sols;
    SolverOptions opts;
    for (int k = 0; k < trials; ++k) {
        auto init = prob.g;
        for (double& v : init.values) v += noise(rng);
        opts.initial = std::move(init);
        opts.audit_samples = k == 0 ? SolverOptions{}.audit_samples : 0;
        sols.push_back(run_solver(prob, opts).u);
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < sols.size(); ++a)
        for (std::size_t b = a + 1; b < sols.size(); ++b)
            worst = std::max(worst, field_lp_norm(sols[a] - sols[b], 2.0));
    return worst;
}

}  // namespace halfwave
