#pragma once

#include <cstddef>
#include <functional>

namespace halfwave {

/// Worker count used by data-parallel kernels: hardware concurrency, capped by
/// the HALFWAVE_THREADS environment variable when it is set to a positive integer.
unsigned worker_count();

/// Sum of `block(begin, end)` over the fixed partition of [0, count) into
/// blocks of `block_size`. Block sums are combined in block order, so the
/// result does not depend on how many threads ran the blocks.
double blocked_sum(std::size_t count, std::size_t block_size,
                   const std::function<double(std::size_t, std::size_t)>& block);

/// Runs `body(begin, end)` over the same kind of fixed partition.
void blocked_for(std::size_t count, std::size_t block_size,
                 const std::function<void(std::size_t, std::size_t)>& body);

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace halfwave
