#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <memory>
#include <mutex>

namespace halfwave::fft {

namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const noexcept {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

template <typename T>
std::unique_ptr<T, FftwFree> alloc(std::size_t count) {
    return std::unique_ptr<T, FftwFree>(static_cast<T*>(fftw_malloc(sizeof(T) * count)));
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t nc = n / 2 + 1;
    auto in = alloc<double>(n);
    auto out = alloc<fftw_complex>(nc);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(x.begin(), x.end(), in.get());
    fftw_execute(plan.get());
    std::vector<std::complex<double>> result(nc);
    for (std::size_t k = 0; k < nc; ++k) result[k] = {out.get()[k][0], out.get()[k][1]};
    return result;
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n) {
    const std::size_t nc = n / 2 + 1;
    auto in = alloc<fftw_complex>(nc);
    auto out = alloc<double>(n);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    for (std::size_t k = 0; k < nc; ++k) {
        in.get()[k][0] = spectrum[k].real();
        in.get()[k][1] = spectrum[k].imag();
    }
    in.get()[0][1] = 0.0;
    if (n % 2 == 0) in.get()[nc - 1][1] = 0.0;
    fftw_execute(plan.get());
    std::vector<double> result(out.get(), out.get() + n);
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : result) v *= scale;
    return result;
}

void fft2(std::vector<std::complex<double>>& data, std::size_t rows, std::size_t cols,
          bool inverse) {
    const std::size_t total = rows * cols;
    auto buf = alloc<fftw_complex>(total);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), buf.get(),
                                    buf.get(), inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                    FFTW_ESTIMATE));
    }
    static_assert(sizeof(fftw_complex) == sizeof(std::complex<double>));
    std::memcpy(buf.get(), data.data(), sizeof(fftw_complex) * total);
    fftw_execute(plan.get());
    for (std::size_t k = 0; k < total; ++k) data[k] = {buf.get()[k][0], buf.get()[k][1]};
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(total);
        for (auto& v : data) v *= scale;
    }
}

std::size_t good_size(std::size_t n) {
    std::size_t best = 1;
    while (best < n) best *= 2;
    for (std::size_t p5 = 1; p5 < best; p5 *= 5) {
        for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
            std::size_t v = p35;
            while (v < n) v *= 2;
            best = std::min(best, v);
        }
    }
    return best;
}

}  // namespace halfwave::fft
