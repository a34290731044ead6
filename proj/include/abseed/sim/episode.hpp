#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "abseed/antibody.hpp"
#include "abseed/sim/arena.hpp"

namespace abseed::sim {

inline constexpr std::int64_t kBaseStepMs = 32;
inline constexpr std::int64_t kControlPeriodMs = 192;
inline constexpr std::int64_t kCameraPeriodMs = 384;
inline constexpr std::int64_t kEpisodeLimitMs = 1'250'000;

// Extra seconds added to the 1250 s limit for a robot that did not finish.
double failure_penalty(int doors_passed);

struct RunOutcome {
    double t = 0.0;  // seconds, penalty included
    int c = 0;
    int doors_passed = 0;
    bool completed = false;

    friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

struct EventRow {
    std::int64_t tick_ms = 0;
    int antigen_code = 0;
    int behavior_type = 0;
    int score = 0;
    std::string event;  // '|'-joined, empty on quiet ticks
};

struct TrajectoryRow {
    std::int64_t tick_ms = 0;
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;
};

void write_event_csv(std::ostream& os, const std::vector<EventRow>& rows);
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows);

struct EpisodeOptions {
    // Reinforcement scoring and both replacement rules. Off for fixed controllers.
    bool learning = true;
    std::vector<EventRow>* events = nullptr;
    std::vector<TrajectoryRow>* trajectory = nullptr;
    // V_max on every tick where the camera was sampled.
    std::vector<int>* camera_vmax = nullptr;
};

struct EpisodeResult {
    RunOutcome outcome;
    Genome genome;  // after on-demand creation and replacements
    std::int64_t simulated_ms = 0;
};

/// Runs one robot through the arena at a 32 ms base step. Every 192 ms the
/// IR ring is read and classified; the camera is read at most every 384 ms
/// and only when no obstacle is in range. Deterministic for a given seed.
EpisodeResult run_episode(Genome genome, const ArenaSpec& arena, std::uint64_t seed,
                          const EpisodeOptions& options = {});

}  // namespace abseed::sim
