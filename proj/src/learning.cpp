#include "abseed/learning.hpp"

#include <cmath>

namespace abseed {

namespace {

std::optional<double> blob_offset(const Percept& p) {
    if (!p.blob_present()) return std::nullopt;
    return p.blob->blob_center_offset;
}

int band_rank(DistanceBand b) {
    switch (b) {
        case DistanceBand::Clear: return 0;
        case DistanceBand::Near: return 1;
        case DistanceBand::Collision: return 2;
    }
    return 0;
}

}  // namespace

ReinforcementContext ReinforcementContext::start(const Percept& p, AntigenCode code, std::int64_t now_ms) {
    ReinforcementContext ctx;
    ctx.prev_code = code;
    ctx.prev_v_max = p.v_max;
    ctx.prev_i_max = p.i_max;
    ctx.prev_blob_offset = blob_offset(p);
    const DistanceBand band = band_of(p.v_max);
    ctx.consecutive_near = band == DistanceBand::Near ? 1 : 0;
    ctx.consecutive_collision = band == DistanceBand::Collision ? 1 : 0;
    ctx.last_antigen_change_ms = now_ms;
    return ctx;
}

void ReinforcementContext::advance(const Percept& p, AntigenCode code, std::int64_t now_ms) {
    const DistanceBand before = band_of(prev_v_max);
    const DistanceBand band = band_of(p.v_max);
    if (band != before || band == DistanceBand::Clear) {
        consecutive_near = 0;
        consecutive_collision = 0;
    }
    if (band == DistanceBand::Near) ++consecutive_near;
    if (band == DistanceBand::Collision) ++consecutive_collision;
    if (code != prev_code) last_antigen_change_ms = now_ms;
    prev_code = code;
    prev_v_max = p.v_max;
    prev_i_max = p.i_max;
    prev_blob_offset = blob_offset(p);
}

int score_transition(const ReinforcementContext& ctx, const Percept& p, AntigenCode new_code) {
    const int from = to_int(ctx.prev_code);
    const int to = to_int(new_code);
    if (to == 0) {
        if (from == 0) return 0;
        if (from == 1) return -10;
        return 10;
    }
    if (to == 1) {
        if (from == 0) return 10;
        if (from >= 2) return 20;
        const auto now = blob_offset(p);
        if (!now || !ctx.prev_blob_offset) return 10;
        const bool centred = std::abs(*now) <= 1.0 / 3.0;
        const bool closer = std::abs(*now) < std::abs(*ctx.prev_blob_offset);
        return centred || closer ? 20 : 10;
    }
    if (from <= 1) return 0;

    const DistanceBand before = band_of(ctx.prev_v_max);
    const DistanceBand band = band_of(p.v_max);
    int score = 0;
    const double prev = ctx.prev_v_max;
    if (p.v_max <= 0.9 * prev || band_rank(band) < band_rank(before)) score += 10;
    if (p.v_max >= 1.1 * prev || band_rank(band) > band_rank(before)) score -= 10;
    const int collisions_in_row =
        band == DistanceBand::Collision ? (before == DistanceBand::Collision ? ctx.consecutive_collision + 1 : 1) : 0;
    if (collisions_in_row >= 3) score -= 10;
    return score;
}

bool apply_score(Genome& genome, AntigenCode code, int score, Rng& rng) {
    auto& slot = genome[code];
    if (!slot) return false;
    slot->score += score;
    if (slot->score < kReplacementThreshold) {
        slot = random_antibody(rng);
        return true;
    }
    return false;
}

bool stagnation_check(ReinforcementContext& ctx, std::int64_t now_ms, Genome& genome, AntigenCode current, Rng& rng) {
    if (now_ms - ctx.last_antigen_change_ms < kStagnationMs) return false;
    genome[current] = random_antibody(rng);
    ctx.last_antigen_change_ms = now_ms;
    return true;
}

}  // namespace abseed
