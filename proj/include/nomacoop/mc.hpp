#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "nomacoop/rng.hpp"

namespace nomacoop {

/// Per-component mean and standard error of a vector-valued Monte Carlo run.
struct McStats {
    std::uint64_t samples = 0;
    std::vector<double> mean;
    std::vector<double> std_error;  // sqrt(sample variance / n); 0 when n < 2
};

namespace detail {
inline constexpr std::uint64_t kMcChunk = 1 << 15;
}

/// Deterministic chunked Monte Carlo. The sample index space is split into
/// fixed-size chunks; chunk c draws from base.substream(c) and its partial
/// sums are stored by chunk index, then reduced sequentially. The result is
/// therefore bit-identical for any worker-thread count.
///
/// draw(rng, out) fills out[0..dim) with one sample vector.
template <typename DrawFn>
McStats run_monte_carlo(std::uint64_t samples, int dim, const SeededRng& base,
                        int threads, DrawFn&& draw) {
    McStats stats;
    stats.samples = samples;
    stats.mean.assign(dim, 0.0);
    stats.std_error.assign(dim, 0.0);
    if (samples == 0 || dim <= 0) return stats;

    const std::uint64_t chunks = (samples + detail::kMcChunk - 1) / detail::kMcChunk;
    std::vector<double> part_sum(chunks * dim, 0.0);
    std::vector<double> part_sq(chunks * dim, 0.0);

    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        std::vector<double> buf(dim);
        for (;;) {
            const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunks) break;
            SeededRng rng = base.substream(c);
            const std::uint64_t begin = c * detail::kMcChunk;
            const std::uint64_t count = std::min<std::uint64_t>(detail::kMcChunk, samples - begin);
            double* sums = &part_sum[c * dim];
            double* sqs = &part_sq[c * dim];
            for (std::uint64_t s = 0; s < count; ++s) {
                draw(rng, std::span<double>(buf));
                for (int k = 0; k < dim; ++k) {
                    sums[k] += buf[k];
                    sqs[k] += buf[k] * buf[k];
                }
            }
        }
    };

    const int n_threads = resolve_thread_count(threads);
    if (n_threads <= 1 || chunks == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // chunk-ordered reduction keeps the floating-point result thread-count
    // independent
    std::vector<double> sum(dim, 0.0), sq(dim, 0.0);
    for (std::uint64_t c = 0; c < chunks; ++c) {
        for (int k = 0; k < dim; ++k) {
            sum[k] += part_sum[c * dim + k];
            sq[k] += part_sq[c * dim + k];
        }
    }
    const double n = static_cast<double>(samples);
    for (int k = 0; k < dim; ++k) {
        stats.mean[k] = sum[k] / n;
        if (samples > 1) {
            const double var = std::max(0.0, (sq[k] - n * stats.mean[k] * stats.mean[k]) / (n - 1.0));
            stats.std_error[k] = std::sqrt(var / n);
        }
    }
    return stats;
}

}  // namespace nomacoop
