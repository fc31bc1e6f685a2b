#include "grainflow/rng.hpp"

#include "grainflow/errors.hpp"

#include <cmath>

namespace grainflow {

double RngStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + uniform01() * (hi - lo);
}

std::size_t RngStream::uniform_index(std::size_t n) {
    if (n == 0) throw DomainError("uniform_index over an empty range");
    return static_cast<std::size_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw DomainError("uniform_int with lo > hi");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    const std::uint64_t offset =
        static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * span) >> 64);
    return lo + static_cast<std::int64_t>(offset);
}

std::int64_t RngStream::poisson(double lambda) {
    if (lambda < 0.0) throw DomainError("poisson rate must be non-negative");
    if (lambda == 0.0) return 0;
    // exp(-lambda) underflows around 700; reject rates long before that.
    if (lambda > 500.0) throw DomainError("poisson rate too large for the multiplication method");
    const double limit = std::exp(-lambda);
    std::int64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform01();
    } while (p > limit);
    return k - 1;
}

} // namespace grainflow
