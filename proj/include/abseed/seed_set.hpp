#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "abseed/sim/episode.hpp"

namespace abseed {

inline constexpr int kSeedSetSize = 5;

// One exported robot. `genome` is the behavior array after its evaluation
// episode; `start_genome` and `episode_seed` reproduce that episode.
struct SeedGenome {
    Genome genome;
    Genome start_genome;
    std::uint64_t episode_seed = 0;
    sim::RunOutcome outcome;

    friend bool operator==(const SeedGenome&, const SeedGenome&) = default;
};

struct Provenance {
    std::string model;   // "single:25", "multi:5x5"
    std::uint64_t seed = 0;
    int generations = 0;  // index of the final generation
    std::string arena;
    int rule = 0;         // stopping-criteria row that fired

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct SeedSet {
    std::array<SeedGenome, kSeedSetSize> genomes;
    Provenance provenance;

    friend bool operator==(const SeedSet&, const SeedSet&) = default;
};

}  // namespace abseed
