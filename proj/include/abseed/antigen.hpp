#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "abseed/sim/sensors.hpp"

namespace abseed {

inline constexpr int kNearThreshold = 250;
inline constexpr int kCollisionThreshold = 2400;
inline constexpr int kAntigenCount = 8;

enum class AntigenCode : std::uint8_t {
    MarkerUnseen = 0,
    MarkerSeen = 1,
    NearRight = 2,
    NearRear = 3,
    NearLeft = 4,
    CollisionRight = 5,
    CollisionRear = 6,
    CollisionLeft = 7,
};

constexpr int to_int(AntigenCode c) { return static_cast<int>(c); }
AntigenCode antigen_from_int(int code);  // throws std::out_of_range
std::string_view antigen_name(AntigenCode c);
constexpr bool is_obstacle(AntigenCode c) { return to_int(c) >= 2; }

enum class DistanceBand { Clear, Near, Collision };
enum class Orientation { Right, Rear, Left };

DistanceBand band_of(int v_max);
Orientation orientation_of(int i_max);

// One sensing snapshot. i_max is the lowest index attaining v_max.
struct Percept {
    sim::IrReadings ir{};
    int i_max = 0;
    int v_max = 0;
    std::optional<sim::BlobView> blob;

    static Percept from(const sim::IrReadings& ir, std::optional<sim::BlobView> blob = std::nullopt);
    bool blob_present() const { return blob && blob->blob_present; }
};

AntigenCode classify(const Percept& p);

}  // namespace abseed
