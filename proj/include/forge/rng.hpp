#ifndef FORGE_RNG_HPP
#define FORGE_RNG_HPP

#include <cstdint>
#include <functional>
#include <string_view>

namespace forge {

// splitmix64 finalizer. All randomness in the toolkit flows through this
// mixer so that outputs are reproducible across platforms and compilers;
// std::uniform_int_distribution and friends are implementation-defined and
// must not be used anywhere in the library.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stable seed for one sentence: fold the id into the global seed. Parallel
// scheduling cannot change per-sentence output because the seed depends only
// on (global_seed, id).
inline uint64_t stable_hash(uint64_t seed, std::string_view id) {
    uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char c : id) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return mix64(seed ^ h);
}

// Independent substream k of a seed (generation, routing, shuffle key, ...).
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return mix64(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
}

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound), bias-free via rejection.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Knuth's product-of-uniforms sampler; fine for the small means used here.
    int poisson(double mean);

private:
    uint64_t state_;
};

// Coin-flip stream consumed by the plural phrase-masking recursion. Kept as
// an injectable source so tests can drive the implementation and an oracle
// from one recorded tape.
using CoinSource = std::function<double()>;

inline CoinSource coin_from_rng(Rng& rng) {
    return [&rng] { return rng.next_double(); };
}

}  // namespace forge

#endif
