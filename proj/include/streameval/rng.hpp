#pragma once

#include <cmath>
#include <cstdint>

namespace streameval {

// Seeded generator with platform-independent output (splitmix64 core). Every
// scored path draws randomness through this type so runs are reproducible
// bit-for-bit regardless of standard-library implementation.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}

    // Independent substream for (seed, stream); used to make parallel
    // replicates agree with serial ones.
    DetRng(std::uint64_t seed, std::uint64_t stream)
        : state_(seed ^ mix(0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n), unbiased via rejection
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Box-Muller; one fresh pair per call, second value discarded
    double normal(double mean, double sigma) {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * radius * std::cos(2.0 * 3.141592653589793238462643 * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace streameval
