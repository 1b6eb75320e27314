#pragma once

// Fractional time derivatives on uniformly sampled functions.
//
// Two backends realise D_+^a (causal, support moves forward in time) and its
// adjoint D_-^a:
//   * Grunwald-Letnikov convolution quadrature: a lower-triangular Toeplitz
//     matrix with weights w_k = (-1)^k binom(a, k) scaled by dt^-a. The
//     backward operator is the exact transpose, and products of GL matrices
//     reproduce GL matrices of the summed order.
//   * Spectral: DFT multiplier |2 pi xi|^a exp(+-i pi a sgn(xi) / 2).
// The Hilbert transform h (symbol -i sgn xi) and the bridge
// H^a = cos(pi a) Id + sin(pi a) h, with D_+^a H^a = D_-^a, live on the
// spectral side only.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "halfwave/grid.hpp"

namespace halfwave {

enum class Direction { Forward, Backward };

struct FracOrder {
    double alpha = 0.5;
    Direction direction = Direction::Forward;

    static FracOrder forward(double a) { return {a, Direction::Forward}; }
    static FracOrder backward(double a) { return {a, Direction::Backward}; }

    /// Throws InvalidArgument unless 0 < alpha <= 1.
    void validate() const;
};

class GLWeights {
public:
    /// Weights w_0..w_{count-1} for order alpha, scale dt^-alpha.
    static GLWeights make(double alpha, std::size_t count, double dt);

    double alpha() const noexcept { return alpha_; }
    double scale() const noexcept { return scale_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }

private:
    double alpha_ = 0.0;
    double scale_ = 1.0;
    std::vector<double> weights_;
};

/// out = scale * T u, T the lower-triangular Toeplitz matrix of the weights
/// (Forward) or its transpose (Backward). Values left of the first sample
/// (Forward) or right of the last (Backward) are taken as zero.
void gl_apply(const GLWeights& w, Direction dir, std::span<const double> in,
              std::span<double> out);

/// Grunwald-Letnikov realisation of D_+^alpha (Forward) or D_-^alpha (Backward).
/// Forward treats u as zero left of t_min, so a nonzero u(t_min) produces a
/// spike of size O(dt^-alpha) at the first sample.
SampledFunction1D gl_derivative(const SampledFunction1D& u, FracOrder ord);

/// Dense n x n GL matrix (row-major) on a grid of spacing dt.
std::vector<double> gl_matrix(FracOrder ord, std::size_t n, double dt = 1.0);

/// max |M_- - M_+^T| over all entries of the n x n GL matrices. Requires n >= 4.
double adjointness_defect(FracOrder ord, std::size_t n);

/// Fourier multiplier m(xi), xi in cycles per unit time.
class Multiplier {
public:
    using Symbol = std::function<std::complex<double>(double)>;

    Multiplier() : symbol_([](double) { return std::complex<double>(1.0, 0.0); }) {}
    explicit Multiplier(Symbol s) : symbol_(std::move(s)) {}

    std::complex<double> operator()(double xi) const { return symbol_(xi); }

    /// Product of symbols, i.e. composition of the operators.
    Multiplier operator*(const Multiplier& other) const;

private:
    Symbol symbol_;
};

/// (0 +- i 2 pi xi)^alpha on the principal branch; 0 at xi = 0.
Multiplier derivative_symbol(FracOrder ord);
/// -i sgn(xi).
Multiplier hilbert_symbol();
/// cos(pi a) - i sin(pi a) sgn(xi).
Multiplier h_alpha_symbol(double alpha);

struct SpectralOptions {
    /// |u| at either end must not exceed decay_tol * max|u|.
    double decay_tol = 1e-8;
    bool check_decay = true;
    /// The DFT runs on a zero-padded copy of length >= pad_factor * n.
    std::size_t pad_factor = 1;
    /// Return the result on the padded grid instead of the input grid.
    bool keep_padding = false;
};

/// Throws DecayViolation if u fails the end-point decay test.
void check_decay(const SampledFunction1D& u, double tol);

/// Applies m on the DFT of u. At an even-length Nyquist bin the real part of
/// the symbol is used so that real input gives real output.
SampledFunction1D apply_multiplier(const SampledFunction1D& u, const Multiplier& m,
                                   const SpectralOptions& opts = {});

SampledFunction1D spectral_derivative(const SampledFunction1D& u, FracOrder ord,
                                      const SpectralOptions& opts = {});
SampledFunction1D hilbert_transform(const SampledFunction1D& u, const SpectralOptions& opts = {});
SampledFunction1D h_alpha(const SampledFunction1D& u, double alpha,
                          const SpectralOptions& opts = {});

/// Squared L2 norm of the spectral half derivative of u (either direction has
/// the same value), computed on a zero-padded line of at least pad_factor * n
/// samples so that the slowly decaying tails of the derivative are kept.
double half_derivative_energy(const SampledFunction1D& u, std::size_t pad_factor = 4);

/// Rectangle-rule integral of |u|^p times dt, to the power 1/p.
double lp_norm(const SampledFunction1D& u, double p);

}  // namespace halfwave
