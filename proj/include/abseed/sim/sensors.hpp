#pragma once

#include <array>
#include <span>
#include <string>

#include "abseed/rng.hpp"
#include "abseed/sim/kinematics.hpp"

namespace abseed::sim {

inline constexpr int kIrSensorCount = 8;
inline constexpr int kIrMaxReading = 4095;
inline constexpr double kIrDecayLength = 0.02;  // m
inline constexpr double kIrNoise = 0.05;        // +/- fraction, uniform
inline constexpr double kIrRange = 0.2;         // beyond this the reading is 0

// Sensor bearings relative to heading; 0-2 face right, 3-4 rear, 5-7 left.
inline constexpr std::array<double, kIrSensorCount> kIrSensorAngles = {
    -17.0 * kPi / 180.0,  -45.0 * kPi / 180.0, -90.0 * kPi / 180.0, -150.0 * kPi / 180.0,
    150.0 * kPi / 180.0,  90.0 * kPi / 180.0,  45.0 * kPi / 180.0,  17.0 * kPi / 180.0,
};

inline constexpr int kCameraColumns = 15;
inline constexpr double kCameraFov = 0.3;  // rad
inline constexpr int kCameraCenterColumn = kCameraColumns / 2;

using IrReadings = std::array<int, kIrSensorCount>;

// Noise-free response for a surface at distance d from the sensor.
double ir_response(double d);

// First blocking surface along a ray (walls, closed doors, obstacles, movers),
// or kIrRange when nothing is closer.
double ray_distance(const ArenaSpec& arena, Vec2 origin, Vec2 dir, std::span<const Circle> movers,
                    double max_range = kIrRange);

IrReadings read_ir(const ArenaSpec& arena, const RobotState& state, Rng& rng,
                   std::span<const Circle> movers = {});

struct BlobView {
    // Column 0 is the leftmost. Empty string: no marker in that column.
    std::array<std::string, kCameraColumns> columns;
    bool blob_present = false;
    double blob_center_offset = 0.0;  // (mean column of largest blob - 7) / 7, + is right
};

BlobView blob_from_columns(const std::array<std::string, kCameraColumns>& columns);

BlobView read_camera(const ArenaSpec& arena, const RobotState& state, std::span<const Circle> movers = {});

}  // namespace abseed::sim
