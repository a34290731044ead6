#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abseed/seed_set.hpp"

namespace abseed {

// Evaluated robot. mu is the relative fitness within its population.
struct Individual {
    Genome start_genome;
    Genome genome;
    sim::RunOutcome outcome;
    std::uint64_t episode_seed = 0;
    double mu = 0.0;
    bool evaluated = false;

    double cost() const { return outcome.t + outcome.c; }
};

/// mu_i = 1 / (w_i * sum_k 1/w_k). Requires at least two strictly positive
/// costs; throws std::invalid_argument otherwise.
std::vector<double> relative_fitness(std::span<const double> costs);

// Index drawn with probability weight_i / sum(weights).
std::size_t roulette_select(std::span<const double> weights, Rng& rng);

// Two distinct indices by roulette, redrawing the second on a repeat.
// Throws std::invalid_argument for fewer than two entries.
std::pair<std::size_t, std::size_t> select_parents(std::span<const double> weights, Rng& rng);

enum class SlotOrigin { Empty, Replaced, CopiedA, CopiedB, Average, RandomPick, HalvesPattern, AlternatingPattern };

struct SlotBreed {
    std::optional<Antibody> antibody;
    SlotOrigin origin = SlotOrigin::Empty;
    int mutations = 0;
};

// Mutation of a single attribute: scale by 1 +/- U[0.2, 0.5], round, clamp.
int mutate_value(int value, Range bounds, Rng& rng);

/// Child antibody for one antigen slot. With probability epsilon a fresh
/// random antibody; otherwise a copy of one parent (types differ, or only one
/// parent has the slot) or a crossover (types match: average, per-attribute
/// random pick, or a fixed half/alternating pattern, chosen uniformly),
/// followed by per-attribute mutation with probability epsilon. L is reset.
SlotBreed breed_slot(const std::optional<Antibody>& a, const std::optional<Antibody>& b, double epsilon, Rng& rng);

Genome breed(const Genome& a, const Genome& b, double epsilon, Rng& rng);

struct GenerationStats {
    int n = 0;
    double t_n = 0.0;  // mean over the elite five
    double c_n = 0.0;
    double f_n = 0.0;  // t_n + c_n
    sim::RunOutcome best;  // lowest-cost individual of the generation
    double wall_s = 0.0;   // wall-clock seconds since evolve() started
    double sim_s = 0.0;    // simulated episode seconds so far
    int rule = 0;          // 0 when not converged
};

/// Thresholds of the four stopping rows:
///   1: n > 0 and t_n < t1 and c_n < c1 and |f_n - f_{n-1}| < df
///   2: n > max_generation
///   3: t_n < t3 and c_n < c3
///   4: n > plateau_generation and |f_n - f_{n-1}| < df
struct StoppingCriteria {
    double row1_t = 400.0;
    double row1_c = 60.0;
    double delta_f = 0.1;
    int max_generation = 30;
    double row3_t = 225.0;
    double row3_c = 35.0;
    int plateau_generation = 15;

    static StoppingCriteria world1();
    static StoppingCriteria world2();
    static std::optional<StoppingCriteria> preset(std::string_view name);
};

// Lowest row number that holds for the last entry of history, or 0.
int check_convergence(std::span<const GenerationStats> history, const StoppingCriteria& criteria);

struct PopulationModel {
    enum class Kind { Single, Multi };
    Kind kind = Kind::Single;
    int populations = 1;
    int size = 25;

    static PopulationModel single(int x);
    static PopulationModel multi(int k, int m);
    // "single:25" or "multi:5x5"; throws std::invalid_argument.
    static PopulationModel parse(std::string_view text);
    std::string to_string() const;
    int total_robots() const { return populations * size; }
    void validate() const;
};

struct Pairing {
    int generation = 0;
    int population = 0;
    int child = 0;     // global robot id
    int parent_a = 0;  // global robot id
    int parent_b = 0;
};

struct EvolveOptions {
    double epsilon = 0.05;
    bool elitism = true;
    unsigned threads = 0;  // 0: hardware concurrency
    std::function<void(const Pairing&)> on_pairing;
    std::string arena_id;
};

struct EvolveResult {
    SeedSet seeds;
    std::vector<GenerationStats> history;
    sim::RunOutcome best;
    double simulated_seconds = 0.0;
};

// Seed of one evaluation episode.
std::uint64_t episode_seed(std::uint64_t master_seed, int robot_id, int generation);

/// Runs the GA until a stopping row fires. Single: the five lowest-cost
/// robots form the elite and the seed set. Multi: five populations breed
/// only internally; the elite and seed set are each population's best.
/// With elitism the best robot of each population is carried into the next
/// generation unchanged, outcome included.
EvolveResult evolve(const sim::ArenaSpec& arena, const PopulationModel& model, const StoppingCriteria& criteria,
                    std::uint64_t master_seed, const EvolveOptions& options = {});

}  // namespace abseed
