#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "abseed/diversity.hpp"
#include "abseed/evolution.hpp"

namespace abseed::harness {

// q = (t + 8c) / 2
double quality(const sim::RunOutcome& outcome);

/// Hand-written comparison controller: marker tracking when clear, forward
/// turns away from near obstacles, spinning away from side contact and
/// driving forward out of rear contact.
Genome baseline_controller();

struct BaselineReport {
    std::vector<sim::RunOutcome> outcomes;
    double mean_q = 0.0;
    int completed = 0;
};

// Runs the baseline genome (learning off) `runs` times with derived seeds.
BaselineReport run_baseline(const sim::ArenaSpec& arena, int runs, std::uint64_t seed);

// What the wall_s column of the stats CSV records.
enum class ClockMode { Wall, Simulated };

struct ExperimentConfig {
    std::string arena = "world1";  // bundled name or path
    PopulationModel model = PopulationModel::multi(5, 5);
    double epsilon = 0.05;
    std::string criteria = "world1";
    int repeats = 10;
    std::uint64_t seed = 1;
    std::filesystem::path out = "out";
    bool elitism = true;
    ClockMode clock = ClockMode::Wall;
    unsigned threads = 0;
};

struct RepeatSummary {
    int repeat = 0;
    std::uint64_t seed = 0;
    double tau_s = 0.0;        // last wall_s entry of the stats CSV
    double wall_s = 0.0;       // wall-clock of the evolve call
    double simulated_s = 0.0;  // total simulated episode time
    double q = 0.0;            // best robot of the final generation
    double z_t = 0.0;
    double z_s = 0.0;
    int generations = 0;
    int rule = 0;
    std::vector<int> omitted_groups;
};

struct RunSummary {
    std::vector<RepeatSummary> repeats;
    double mean_tau_s = 0.0;
    double mean_q = 0.0;
    double mean_z_t = 0.0;
    double mean_z_s = 0.0;
    double mean_generations = 0.0;

    std::string to_json() const;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string stats_csv(const std::vector<GenerationStats>& history, ClockMode clock);
std::string seed_file_name(int repeat);
std::string stats_file_name(int repeat);

/// Runs `repeats` independent evolutions and writes seedset_rNN.txt,
/// stats_rNN.csv and summary.json under config.out. The arena, criteria and
/// model are checked before anything is written; ConfigError or
/// sim::ArenaError leave the output directory untouched.
RunSummary cmd_evolve(const ExperimentConfig& config);

struct ReplayResult {
    sim::RunOutcome outcome;
    sim::RunOutcome recorded;
    std::uint64_t seed = 0;
    std::vector<sim::EventRow> events;
    std::vector<sim::TrajectoryRow> trajectory;

    bool matches_recorded() const { return outcome == recorded; }
};

// Re-runs one exported genome from its start genome. Without an explicit
// seed the recorded episode seed is used and the outcome matches.
ReplayResult cmd_replay(const SeedSet& seeds, int genome_index, const sim::ArenaSpec& arena,
                        std::optional<std::uint64_t> seed = std::nullopt);

DiversityReport cmd_diversity(const SeedSet& seeds, bool analytic_sigma = false);
std::string format_diversity(const DiversityReport& r);

}  // namespace abseed::harness
