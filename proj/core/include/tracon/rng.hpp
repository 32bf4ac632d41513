#pragma once

#include <cmath>
#include <cstdint>

namespace tracon {

/// Seeded PRNG used everywhere randomness is needed (splitmix64 core).
///
/// The standard <random> engines are portable but the distributions are
/// not; simulation outputs must be bit-identical across toolchains, so
/// both the generator and the draw helpers live here.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    double uniform(double a, double b) { return a + next_double() * (b - a); }

    /// Standard normal via Box-Muller; consumes exactly two draws.
    double gaussian(double mean = 0.0, double sd = 1.0) {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Poisson count via Knuth's product method; fine for small means.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

private:
    std::uint64_t state_;
};

} // namespace tracon
