#include "abseed/sim/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace abseed::sim {

double ir_response(double d) {
    if (d >= kIrRange) return 0.0;
    return kIrMaxReading * std::exp(-std::max(d, 0.0) / kIrDecayLength);
}

namespace {

struct Hit {
    double distance = std::numeric_limits<double>::infinity();
    bool closed_door = false;
};

Hit nearest_blocking(const ArenaSpec& arena, Vec2 origin, Vec2 dir, std::span<const Circle> movers) {
    Hit best;
    auto consider = [&](std::optional<double> t, bool door) {
        if (!t) return;
        // Closed doors win exact ties so they hide co-located markers and walls.
        if (*t < best.distance - 1e-12 || (door && *t <= best.distance + 1e-12)) {
            best.distance = *t;
            best.closed_door = door;
        }
    };
    for (const Segment& w : arena.walls) consider(ray_hit(origin, dir, w), false);
    for (const Circle& o : arena.obstacles) consider(ray_hit(origin, dir, o), false);
    for (const Circle& o : movers) consider(ray_hit(origin, dir, o), false);
    for (const Door& d : arena.doors) {
        if (d.state == DoorState::Closed) consider(ray_hit(origin, dir, d.segment), true);
    }
    return best;
}

}  // namespace

double ray_distance(const ArenaSpec& arena, Vec2 origin, Vec2 dir, std::span<const Circle> movers,
                    double max_range) {
    return std::min(nearest_blocking(arena, origin, dir, movers).distance, max_range);
}

IrReadings read_ir(const ArenaSpec& arena, const RobotState& state, Rng& rng, std::span<const Circle> movers) {
    IrReadings out{};
    const Vec2 center = state.pose.position();
    for (int i = 0; i < kIrSensorCount; ++i) {
        const Vec2 dir = unit_vector(state.pose.heading + kIrSensorAngles[i]);
        const Vec2 origin = center + dir * state.body_radius;
        const double d = ray_distance(arena, origin, dir, movers);
        const double noisy = ir_response(d) * (1.0 + uniform_real(rng, -kIrNoise, kIrNoise));
        out[i] = static_cast<int>(std::clamp(std::lround(noisy), 0L, static_cast<long>(kIrMaxReading)));
    }
    return out;
}

BlobView blob_from_columns(const std::array<std::string, kCameraColumns>& columns) {
    BlobView view;
    view.columns = columns;
    int best_start = -1;
    int best_len = 0;
    for (int i = 0; i < kCameraColumns;) {
        if (columns[i].empty()) {
            ++i;
            continue;
        }
        int j = i;
        while (j < kCameraColumns && !columns[j].empty()) ++j;
        if (j - i > best_len) {
            best_start = i;
            best_len = j - i;
        }
        i = j;
    }
    if (best_len > 0) {
        const double mean = best_start + 0.5 * (best_len - 1);
        view.blob_present = true;
        view.blob_center_offset = (mean - kCameraCenterColumn) / static_cast<double>(kCameraCenterColumn);
    }
    return view;
}

BlobView read_camera(const ArenaSpec& arena, const RobotState& state, std::span<const Circle> movers) {
    std::array<std::string, kCameraColumns> columns;
    const Vec2 eye = state.pose.position() + unit_vector(state.pose.heading) * state.body_radius;
    for (int c = 0; c < kCameraColumns; ++c) {
        const double bearing = 0.5 * kCameraFov - c * kCameraFov / (kCameraColumns - 1);
        const Vec2 dir = unit_vector(state.pose.heading + bearing);
        const Hit block = nearest_blocking(arena, eye, dir, movers);
        double marker_dist = std::numeric_limits<double>::infinity();
        const Marker* seen = nullptr;
        for (const Marker& m : arena.markers) {
            const auto t = ray_hit(eye, dir, m.segment);
            if (t && *t < marker_dist) {
                marker_dist = *t;
                seen = &m;
            }
        }
        if (seen == nullptr) continue;
        const bool in_front = marker_dist < block.distance - 1e-9;
        const bool tied_with_wall = std::abs(marker_dist - block.distance) <= 1e-9 && !block.closed_door;
        if (in_front || tied_with_wall) columns[c] = seen->color;
    }
    return blob_from_columns(columns);
}

}  // namespace abseed::sim
