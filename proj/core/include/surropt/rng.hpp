#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace surropt {

// Deterministic random stream. Uniform and normal variates are generated
// with explicit arithmetic on raw mt19937_64 output instead of the standard
// distribution adaptors, whose draw sequences differ across library
// implementations. Two runs seeded identically must produce byte-identical
// results regardless of toolchain.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Box-Muller without caching the paired variate, so the number of raw
    // draws per call is fixed at two.
    double normal(double mean, double stddev) {
        double u1 = uniform();
        double u2 = uniform();
        // Flip u1 into (0, 1] so the log is finite.
        double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        double z = r * std::cos(2.0 * std::numbers::pi * u2);
        return mean + stddev * z;
    }

private:
    std::mt19937_64 gen_;
};

// SplitMix64 finalizer; used to decorrelate derived seeds.
inline std::uint64_t mix_u64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for one execution of one experiment cell. Every run owns an
// independent stream, which keeps serial and parallel schedules identical.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell,
                                 std::uint64_t execution) {
    std::uint64_t h = mix_u64(master ^ 0x6a09e667f3bcc908ULL);
    h = mix_u64(h ^ cell);
    h = mix_u64(h ^ (execution + 0x1000000000000001ULL));
    return h;
}

}  // namespace surropt
