#pragma once

#include <cstdint>
#include <random>

namespace rgg {

/// Deterministic RNG wrapper. Mapping to doubles/ints is done by hand so
/// results never depend on the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(gen_() % span);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace rgg
