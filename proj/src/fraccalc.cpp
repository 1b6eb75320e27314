#include "halfwave/fraccalc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "halfwave/error.hpp"
#include "halfwave/parallel.hpp"

namespace halfwave {

using cplx = std::complex<double>;

void FracOrder::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw InvalidArgument("fractional order must lie in (0, 1], got " + std::to_string(alpha));
    }
}

GLWeights GLWeights::make(double alpha, std::size_t count, double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("GL weights need dt > 0");
    GLWeights g;
    g.alpha_ = alpha;
    g.scale_ = std::pow(dt, -alpha);
    g.weights_.resize(count);
    if (count > 0) g.weights_[0] = 1.0;
    for (std::size_t k = 1; k < count; ++k) {
        const double kd = static_cast<double>(k);
        g.weights_[k] = g.weights_[k - 1] * (kd - 1.0 - alpha) / kd;
    }
    return g;
}

void gl_apply(const GLWeights& w, Direction dir, std::span<const double> in,
              std::span<double> out) {
    const std::size_t n = in.size();
    if (out.size() != n || w.size() < n) {
        throw InvalidArgument("gl_apply: size mismatch");
    }
    const auto wt = w.weights();
    const double scale = w.scale();
    blocked_for(n, 256, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            CompensatedSum s;
            if (dir == Direction::Forward) {
                for (std::size_t k = 0; k <= j; ++k) s.add(wt[k] * in[j - k]);
            } else {
                for (std::size_t k = 0; j + k < n; ++k) s.add(wt[k] * in[j + k]);
            }
            out[j] = scale * s.value();
        }
    });
}

SampledFunction1D gl_derivative(const SampledFunction1D& u, FracOrder ord) {
    ord.validate();
    const std::size_t n = u.size();
    if (n < 2) throw InvalidArgument("gl_derivative needs at least 2 samples");
    const auto w = GLWeights::make(ord.alpha, n, u.grid.dt());
    std::vector<double> out(n);
    gl_apply(w, ord.direction, u.values, out);
    return {u.grid, std::move(out)};
}

std::vector<double> gl_matrix(FracOrder ord, std::size_t n, double dt) {
    ord.validate();
    const auto w = GLWeights::make(ord.alpha, n, dt);
    std::vector<double> mat(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (ord.direction == Direction::Forward && c <= r) {
                mat[r * n + c] = w.scale() * w.weights()[r - c];
            } else if (ord.direction == Direction::Backward && c >= r) {
                mat[r * n + c] = w.scale() * w.weights()[c - r];
            }
        }
    }
    return mat;
}

double adjointness_defect(FracOrder ord, std::size_t n) {
    if (n < 4) throw InvalidArgument("adjointness_defect needs n >= 4");
    const auto fwd = gl_matrix(FracOrder::forward(ord.alpha), n);
    const auto bwd = gl_matrix(FracOrder::backward(ord.alpha), n);
    double worst = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            worst = std::max(worst, std::abs(bwd[r * n + c] - fwd[c * n + r]));
        }
    }
    return worst;
}

Multiplier Multiplier::operator*(const Multiplier& other) const {
    return Multiplier([a = symbol_, b = other.symbol_](double xi) { return a(xi) * b(xi); });
}

Multiplier derivative_symbol(FracOrder ord) {
    ord.validate();
    const double sign = ord.direction == Direction::Forward ? 1.0 : -1.0;
    const double alpha = ord.alpha;
    return Multiplier([alpha, sign](double xi) -> cplx {
        if (xi == 0.0) return {0.0, 0.0};
        const double mag = std::pow(2.0 * std::numbers::pi * std::abs(xi), alpha);
        const double phase = sign * std::numbers::pi * alpha * 0.5 * (xi > 0 ? 1.0 : -1.0);
        return std::polar(mag, phase);
    });
}

Multiplier hilbert_symbol() {
    return Multiplier([](double xi) -> cplx {
        if (xi == 0.0) return {0.0, 0.0};
        return {0.0, xi > 0 ? -1.0 : 1.0};
    });
}

Multiplier h_alpha_symbol(double alpha) {
    const double c = std::cos(std::numbers::pi * alpha);
    const double s = std::sin(std::numbers::pi * alpha);
    return Multiplier([c, s](double xi) -> cplx {
        const double sg = xi > 0 ? 1.0 : (xi < 0 ? -1.0 : 0.0);
        return {c, -s * sg};
    });
}

void check_decay(const SampledFunction1D& u, double tol) {
    double peak = 0.0;
    for (double v : u.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return;
    const double edge = std::max(std::abs(u.values.front()), std::abs(u.values.back()));
    if (edge > tol * peak) {
        throw DecayViolation("sampled function does not decay at the grid ends (|u_edge|/max|u| = " +
                                 std::to_string(edge / peak) + ")",
                             edge / peak);
    }
}

SampledFunction1D apply_multiplier(const SampledFunction1D& u, const Multiplier& m,
                                   const SpectralOptions& opts) {
    if (opts.check_decay) check_decay(u, opts.decay_tol);
    const std::size_t n = u.size();
    const std::size_t total =
        opts.pad_factor <= 1 ? n : fft::good_size(opts.pad_factor * n);
    const std::size_t left = (total - n) / 2;
    const double dt = u.grid.dt();

    std::vector<double> padded(total, 0.0);
    std::copy(u.values.begin(), u.values.end(), padded.begin() + static_cast<long>(left));
    auto spec = fft::rfft(padded);
    const double period = static_cast<double>(total) * dt;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double xi = static_cast<double>(k) / period;
        cplx mk = m(xi);
        if (total % 2 == 0 && k == total / 2) mk = {mk.real(), 0.0};
        if (k == 0) mk = {mk.real(), 0.0};
        spec[k] *= mk;
    }
    auto out = fft::irfft(spec, total);
    if (opts.keep_padding) {
        const auto g = Grid1D::with_spacing(u.grid.t_min() - static_cast<double>(left) * dt, dt, total);
        return {g, std::move(out)};
    }
    std::vector<double> trimmed(out.begin() + static_cast<long>(left),
                                out.begin() + static_cast<long>(left + n));
    return {u.grid, std::move(trimmed)};
}

SampledFunction1D spectral_derivative(const SampledFunction1D& u, FracOrder ord,
                                      const SpectralOptions& opts) {
    return apply_multiplier(u, derivative_symbol(ord), opts);
}

SampledFunction1D hilbert_transform(const SampledFunction1D& u, const SpectralOptions& opts) {
    return apply_multiplier(u, hilbert_symbol(), opts);
}

SampledFunction1D h_alpha(const SampledFunction1D& u, double alpha, const SpectralOptions& opts) {
    return apply_multiplier(u, h_alpha_symbol(alpha), opts);
}

double half_derivative_energy(const SampledFunction1D& u, std::size_t pad_factor) {
    SpectralOptions opts;
    opts.check_decay = false;
    opts.pad_factor = std::max<std::size_t>(1, pad_factor);
    opts.keep_padding = true;
    const auto d = spectral_derivative(u, FracOrder::backward(0.5), opts);
    CompensatedSum s;
    for (double v : d.values) s.add(v * v);
    return s.value() * d.grid.dt();
}

double lp_norm(const SampledFunction1D& u, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("lp_norm needs p >= 1");
    CompensatedSum s;
    for (double v : u.values) s.add(std::pow(std::abs(v), p));
    return std::pow(s.value() * u.grid.dt(), 1.0 / p);
}

}  // namespace halfwave
