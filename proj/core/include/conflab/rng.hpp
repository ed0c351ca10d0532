#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace conflab {

// splitmix64, used to expand seeds and derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// FNV-1a over the tag bytes.
inline std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char ch : tag) {
        h ^= ch;
        h *= 0x100000001B3ull;
    }
    return h;
}

// Deterministic random stream. mt19937_64 output is pinned by the standard,
// and every draw below is derived from raw engine words rather than library
// distributions, so identical seeds give identical sequences on any platform.
//
// Streams are splittable: split() derives a child whose sequence depends only
// on the parent seed and the tag, never on how many values were drawn.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

    Rng split(std::string_view tag) const { return Rng(splitmix64(seed_ ^ hash_tag(tag))); }
    Rng split(std::uint64_t salt) const {
        return Rng(splitmix64(seed_ ^ (salt * 0x9E3779B97F4A7C15ull)));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0,1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Unbiased uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
        const std::uint64_t limit = max - rem;
        std::uint64_t r = next_u64();
        while (r > limit) r = next_u64();
        return r % n;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace conflab
