#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace abseed {

// Every stochastic component takes one of these by reference. Episodes,
// repeats and breeding steps each own a stream derived from the master seed.
using Rng = std::mt19937_64;

// Mixes the parts through std::seed_seq, whose algorithm is fixed by the
// standard, so derived seeds are stable across platforms.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

inline Rng make_rng(std::initializer_list<std::uint64_t> parts) {
    return Rng(derive_seed(parts));
}

// Inclusive integer draw.
inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return std::bernoulli_distribution(p)(rng);
}

}  // namespace abseed
