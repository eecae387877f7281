#include "nomacoop/rng.hpp"

#include <algorithm>
#include <thread>

namespace nomacoop {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    // Expand (seed, stream_id) into well-mixed words; std::seed_seq's
    // generate() is fully specified, so the engine state is portable.
    std::uint64_t s = seed ^ (stream_id * 0xda942042e4dd58b5ULL);
    const std::uint64_t a = splitmix64(s);
    const std::uint64_t b = splitmix64(s);
    const std::uint64_t c = splitmix64(s);
    const std::uint64_t d = splitmix64(s);
    std::seed_seq seq{
        static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
        static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
        static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    engine_.seed(seq);
}

SeededRng SeededRng::substream(std::uint64_t index) const {
    std::uint64_t s = stream_id_ ^ (index + 1) * 0x9e3779b97f4a7c15ULL;
    return SeededRng(seed_, splitmix64(s));
}

}  // namespace nomacoop
