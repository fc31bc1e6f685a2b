#pragma once

#include <cstdint>
#include <random>

namespace grainflow {

// Deterministic random stream. mt19937_64 is pinned bit-for-bit by the
// standard; the value mappings below are hand-rolled because the standard
// library distributions are not, and replays must be identical everywhere.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1), 53-bit resolution
    double uniform01();

    // [lo, hi)
    double uniform(double lo, double hi);

    // [0, n)
    std::size_t uniform_index(std::size_t n);

    // [lo, hi] inclusive
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Knuth multiplication method; rate 0 returns 0 without consuming a draw.
    std::int64_t poisson(double lambda);

private:
    std::mt19937_64 engine_;
};

} // namespace grainflow
