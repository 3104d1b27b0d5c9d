#pragma once

#include <cstdint>
#include <random>

namespace ecv::rng {

// splitmix64 scramble: turns (base seed, replicate index) into well-separated
// child seeds, so parallel replicates are reproducible from one logged seed.
inline std::uint64_t child_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class stream {
public:
    explicit stream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // uniform in [0, 1) with 53 random bits
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n), unbiased by rejection
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (-n) % n;
        std::uint64_t x = next();
        while (x < threshold) x = next();
        return x % n;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ecv::rng
