#pragma once

// Self-contained seeded RNG and the sampling laws the generator needs.
// std::<random> distributions are implementation-defined, so everything here
// is written out: the same seed yields the same corpus on any platform.

#include <cmath>
#include <cstdint>
#include <vector>

#include "fieldrank/errors.hpp"

namespace fieldrank {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded via splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    // Counter-keyed child stream: generation order independent.
    Rng derive(std::uint64_t stream) const {
        std::uint64_t sm = state_[0] ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
        return Rng(splitmix64(sm));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) via rejection-free Lemire reduction.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw internal_error("rng: next_below(0)");
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

// Standard normal via Box-Muller (no cached spare: two uniforms per draw).
inline double sample_normal(Rng& rng) {
    double u1 = rng.next_double();
    double u2 = rng.next_double();
    while (u1 <= 0.0) u1 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

inline double sample_lognormal(Rng& rng, double mu, double sigma) {
    return std::exp(mu + sigma * sample_normal(rng));
}

// Knuth's product method; the generator's per-researcher rates stay small.
inline int sample_poisson(Rng& rng, double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda > 200.0)
        throw validation_error("poisson rate " + std::to_string(lambda) + " too large");
    const double limit = std::exp(-lambda);
    int k = 0;
    double product = rng.next_double();
    while (product > limit) {
        ++k;
        product *= rng.next_double();
    }
    return k;
}

// Geometric on {0, 1, 2, ...} with success probability p, by inversion.
inline int sample_geometric(Rng& rng, double p) {
    if (p >= 1.0) return 0;
    double u = rng.next_double();
    while (u <= 0.0) u = rng.next_double();
    return static_cast<int>(std::floor(std::log(u) / std::log1p(-p)));
}

// Index draw proportional to non-negative weights.
inline std::size_t sample_discrete(Rng& rng, const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) throw internal_error("rng: sample_discrete with zero total weight");
    double target = rng.next_double() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cum += weights[i];
        if (target < cum) return i;
    }
    return weights.size() - 1;
}

}  // namespace fieldrank
