#pragma once

#include <cstdint>
#include <span>

#include "abseed/sim/arena.hpp"

namespace abseed::sim {

// e-puck platform values. One Speed Unit is 0.00683 rad/s of wheel rotation.
inline constexpr double kSpeedUnit = 0.00683;
inline constexpr double kWheelRadius = 0.0205;
inline constexpr double kAxleLength = 0.052;
inline constexpr double kBodyRadius = 0.037;

// Contact is registered only for penetration beyond this depth.
inline constexpr double kContactTolerance = 1e-12;

struct WheelSpeeds {
    double left = 0.0;   // Speed Units
    double right = 0.0;
    friend bool operator==(const WheelSpeeds&, const WheelSpeeds&) = default;
};

struct RobotState {
    Pose pose;
    double body_radius = kBodyRadius;
    WheelSpeeds wheel_speeds;
    std::int64_t clock_ms = 0;
    bool in_contact = false;
};

// Linear wheel-rim speed in m/s for a command in Speed Units.
inline double wheel_linear_speed(double speed_units) { return speed_units * kSpeedUnit * kWheelRadius; }

// Differential-drive arc integration with no obstacles.
Pose integrate_free(const Pose& pose, const WheelSpeeds& speeds, double dt);

/// Advances the robot by dt seconds and resolves contact against walls,
/// closed doors, obstacles and any moving bodies in `movers` (the dummy
/// robot). A body that would penetrate is pushed back to contact; if that
/// cannot be resolved the position from the start of the sub-step is kept.
RobotState step_kinematics(const ArenaSpec& arena, const RobotState& state, double dt,
                           std::span<const Circle> movers = {});

// Deepest overlap of a body circle with static geometry (0 when clear).
double penetration_depth(const ArenaSpec& arena, Vec2 center, double radius);

}  // namespace abseed::sim
