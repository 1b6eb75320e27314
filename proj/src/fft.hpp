#pragma once

// Thin RAII layer over FFTW used by the spectral operators.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace halfwave::fft {

/// Forward real DFT, X_k = sum_j x_j exp(-2 pi i j k / n), k = 0..n/2.
std::vector<std::complex<double>> rfft(std::span<const double> x);

/// Inverse of rfft including the 1/n factor. Imaginary parts of the DC and
/// (for even n) Nyquist bins are ignored.
std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n);

/// In-place 2-D complex DFT of a row-major rows x cols array. The inverse
/// includes the 1/(rows*cols) factor.
void fft2(std::vector<std::complex<double>>& data, std::size_t rows, std::size_t cols,
          bool inverse);

/// Smallest 2^a 3^b 5^c that is >= n.
std::size_t good_size(std::size_t n);

}  // namespace halfwave::fft
