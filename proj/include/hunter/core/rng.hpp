#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hunter {

// All randomness in the simulator flows through this wrapper. mt19937_64 is
// bit-specified by the standard; the distribution transforms below are pinned
// here because the std::*_distribution algorithms are implementation-defined
// and would break replay across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    // Knuth's product-of-uniforms sampler; fine for the moderate rates used
    // for job arrivals.
    int poisson(double lambda) {
        const double limit = std::exp(-lambda);
        int n = 0;
        double product = uniform();
        while (product > limit) {
            ++n;
            product *= uniform();
        }
        return n;
    }

    // Box-Muller, one value per call.
    double normal(double mean, double stddev) {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * mag * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent child seeds from
// (seed, index) pairs without correlating the streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace hunter
