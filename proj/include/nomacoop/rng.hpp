#pragma once

#include <cstdint>
#include <random>

namespace nomacoop {

/// 0 selects std::thread::hardware_concurrency().
int resolve_thread_count(int requested);

/// Deterministic seeded random stream. Identical (seed, stream_id) pairs
/// reproduce identical draw sequences on any platform: the engine is the
/// standard-specified mt19937_64 and all variates are derived from raw
/// 64-bit outputs, never from implementation-defined distributions.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }

    /// 53-bit uniform in [0, 1)
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// exponential with the given mean, by inversion
    double exponential(double mean) { return -mean * std::log1p(-u01()); }

    /// uniform over [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    /// Decorrelated child stream for worker/chunk `index`; derived purely
    /// from (seed, stream_id, index), so fan-out is reproducible.
    SeededRng substream(std::uint64_t index) const;

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace nomacoop
