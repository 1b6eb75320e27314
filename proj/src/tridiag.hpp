#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace halfwave::detail {

/// Thomas algorithm for sub[k] x[k-1] + diag[k] x[k] + super[k] x[k+1] = rhs[k]
/// (sub[0] and super[n-1] unused). Assumes a diagonally dominant or SPD
/// matrix; no pivoting. `rhs` is overwritten with the solution.
inline void thomas_solve(std::span<const double> sub, std::span<const double> diag,
                         std::span<const double> super, std::span<double> rhs,
                         std::vector<double>& scratch) {
    const std::size_t n = diag.size();
    if (n == 0) return;
    scratch.resize(n);
    double beta = diag[0];
    rhs[0] /= beta;
    for (std::size_t k = 1; k < n; ++k) {
        scratch[k] = super[k - 1] / beta;
        beta = diag[k] - sub[k] * scratch[k];
        rhs[k] = (rhs[k] - sub[k] * rhs[k - 1]) / beta;
    }
    for (std::size_t k = n - 1; k > 0; --k) rhs[k - 1] -= scratch[k] * rhs[k];
}

}  // namespace halfwave::detail
