#pragma once

#include <cstdint>
#include <random>

namespace hardrange {

// Derives an independent stream seed from a base seed and a stream index.
// splitmix64 finalizer; stable across platforms.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic uniform generator. Doubles are built from the top 53 bits of
// mt19937_64 draws instead of std::uniform_real_distribution, whose output is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // uniform in [0, 1)
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // uniform integer in [0, n)
    std::uint64_t index(std::uint64_t n) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = n * ((~0ULL) / n);
        std::uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % n;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace hardrange
