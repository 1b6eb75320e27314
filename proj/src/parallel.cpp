#include "halfwave/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace halfwave {

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HALFWAVE_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
        } catch (...) {
            // unparsable value: ignore the cap
        }
    }
    return hw;
}

namespace {

void run_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& run_one) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n_blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) run_one(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) run_one(b);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

double blocked_sum(std::size_t count, std::size_t block_size,
                   const std::function<double(std::size_t, std::size_t)>& block) {
    if (count == 0) return 0.0;
    block_size = std::max<std::size_t>(1, block_size);
    const std::size_t n_blocks = (count + block_size - 1) / block_size;
    std::vector<double> partial(n_blocks, 0.0);
    run_blocks(n_blocks, [&](std::size_t b) {
        const std::size_t begin = b * block_size;
        partial[b] = block(begin, std::min(count, begin + block_size));
    });
    CompensatedSum total;
    for (double s : partial) total.add(s);
    return total.value();
}

void blocked_for(std::size_t count, std::size_t block_size,
                 const std::function<void(std::size_t, std::size_t)>& body) {
    if (count == 0) return;
    block_size = std::max<std::size_t>(1, block_size);
    const std::size_t n_blocks = (count + block_size - 1) / block_size;
    run_blocks(n_blocks, [&](std::size_t b) {
        const std::size_t begin = b * block_size;
        body(begin, std::min(count, begin + block_size));
    });
}

}  // namespace halfwave
