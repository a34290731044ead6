#pragma once

#include <cstdint>
#include <optional>

#include "abseed/antibody.hpp"

namespace abseed {

inline constexpr int kReplacementThreshold = -14;
inline constexpr std::int64_t kStagnationMs = 60'000;

// State carried between control ticks for scoring transitions.
struct ReinforcementContext {
    AntigenCode prev_code = AntigenCode::MarkerUnseen;
    int prev_v_max = 0;
    int prev_i_max = 0;
    std::optional<double> prev_blob_offset;
    int consecutive_near = 0;
    int consecutive_collision = 0;
    std::int64_t last_antigen_change_ms = 0;

    static ReinforcementContext start(const Percept& p, AntigenCode code, std::int64_t now_ms);
    // Rolls the context forward to the new tick. Tallies reset when the band
    // changes or the tick is obstacle-free.
    void advance(const Percept& p, AntigenCode code, std::int64_t now_ms);
};

/// Reinforcement for moving from ctx.prev_code to new_code.
///
/// Fixed rows: 0->0 0, 1->0 -10, obstacle->0 +10, 0->1 +10, obstacle->1 +20,
/// 0->obstacle 0, 1->obstacle 0.
///
/// 1->1 is +20 when the blob moved toward the image center or sits within
/// the middle third, +10 otherwise.
///
/// obstacle->obstacle starts at 0: +10 for a V_max drop of at least 10% or
/// collision->near, -10 for a rise of at least 10% or near->collision, and a
/// further -10 once three or more consecutive ticks are in the collision band.
int score_transition(const ReinforcementContext& ctx, const Percept& p, AntigenCode new_code);

// L += score on the slot; an L below -14 replaces the behavior with a fresh
// random one. Returns true on replacement. Empty slots are left untouched.
bool apply_score(Genome& genome, AntigenCode code, int score, Rng& rng);

// Replaces the current slot once the antigen has been unchanged for 60 s and
// restarts the timer. Returns true on replacement.
bool stagnation_check(ReinforcementContext& ctx, std::int64_t now_ms, Genome& genome, AntigenCode current, Rng& rng);

}  // namespace abseed
