#include "abseed/sim/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace abseed::sim {

Pose integrate_free(const Pose& pose, const WheelSpeeds& speeds, double dt) {
    const double vl = wheel_linear_speed(speeds.left);
    const double vr = wheel_linear_speed(speeds.right);
    Pose out = pose;
    if (speeds.left == speeds.right) {
        out.x += vl * std::cos(pose.heading) * dt;
        out.y += vl * std::sin(pose.heading) * dt;
        return out;
    }
    const double v = 0.5 * (vl + vr);
    const double w = (vr - vl) / kAxleLength;
    const double heading = pose.heading + w * dt;
    out.x += v / w * (std::sin(heading) - std::sin(pose.heading));
    out.y -= v / w * (std::cos(heading) - std::cos(pose.heading));
    out.heading = wrap_angle(heading);
    return out;
}

namespace {

template <typename Fn>
void for_each_blocking_segment(const ArenaSpec& arena, Fn&& fn) {
    for (const Segment& w : arena.walls) fn(w);
    for (const Door& d : arena.doors) {
        if (d.state == DoorState::Closed) fn(d.segment);
    }
}

double max_penetration(const ArenaSpec& arena, Vec2 c, double r, std::span<const Circle> movers) {
    double depth = 0.0;
    for_each_blocking_segment(arena, [&](const Segment& s) { depth = std::max(depth, r - distance(s, c)); });
    for (const Circle& o : arena.obstacles) depth = std::max(depth, o.radius + r - norm(c - o.center));
    for (const Circle& o : movers) depth = std::max(depth, o.radius + r - norm(c - o.center));
    return depth;
}

// Pushes c out of everything it overlaps. Returns true if any push happened.
bool push_out(const ArenaSpec& arena, Vec2& c, double r, Vec2 fallback_from, std::span<const Circle> movers) {
    bool pushed = false;
    auto from_point = [&](Vec2 q, double clearance) {
        Vec2 d = c - q;
        double len = norm(d);
        if (len >= clearance - kContactTolerance) return;
        if (len == 0.0) {
            d = fallback_from - q;
            len = norm(d);
            if (len == 0.0) return;
        }
        c = q + d * (clearance / len);
        pushed = true;
    };
    for_each_blocking_segment(arena, [&](const Segment& s) { from_point(closest_point(s, c), r); });
    for (const Circle& o : arena.obstacles) from_point(o.center, o.radius + r);
    for (const Circle& o : movers) from_point(o.center, o.radius + r);
    return pushed;
}

}  // namespace

double penetration_depth(const ArenaSpec& arena, Vec2 center, double radius) {
    return std::max(0.0, max_penetration(arena, center, radius, {}));
}

RobotState step_kinematics(const ArenaSpec& arena, const RobotState& state, double dt,
                           std::span<const Circle> movers) {
    RobotState out = state;
    out.in_contact = false;
    out.clock_ms += std::llround(dt * 1000.0);
    if (dt <= 0.0) return out;

    const double r = state.body_radius;
    const double top_speed = std::max(std::abs(wheel_linear_speed(state.wheel_speeds.left)),
                                      std::abs(wheel_linear_speed(state.wheel_speeds.right)));
    // Keep each sub-step well below the body radius so nothing tunnels.
    const int substeps = std::max(1, static_cast<int>(std::ceil(top_speed * dt / (0.25 * r))));
    const double h = dt / substeps;

    for (int i = 0; i < substeps; ++i) {
        const Pose before = out.pose;
        Pose next = integrate_free(before, state.wheel_speeds, h);
        Vec2 c = next.position();
        bool touched = false;
        for (int iter = 0; iter < 16; ++iter) {
            if (!push_out(arena, c, r, before.position(), movers)) break;
            touched = true;
        }
        if (touched && max_penetration(arena, c, r, movers) > kContactTolerance) {
            c = before.position();
        }
        next.x = c.x;
        next.y = c.y;
        out.pose = next;
        out.in_contact = out.in_contact || touched;
    }
    return out;
}

}  // namespace abseed::sim
