#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abseed/antigen.hpp"
#include "abseed/rng.hpp"
#include "abseed/sim/kinematics.hpp"

namespace abseed {

enum class BehaviorType {
    WanderSingle = 0,
    WanderBoth = 1,
    ForwardTurn = 2,
    StaticTurn = 3,
    ReverseTurn = 4,
    TrackMarkers = 5,
};

inline constexpr int kBehaviorTypeCount = 6;

enum class TurnDirection { Left, Right };

std::string_view behavior_name(BehaviorType t);  // e.g. "WANDER_SINGLE"
std::optional<BehaviorType> behavior_from_name(std::string_view name);

struct Range {
    int min = 0;
    int max = 0;
    bool contains(int v) const { return v >= min && v <= max; }
};

// Per-type attribute domains. An absent range means the attribute is unused.
struct TypeBounds {
    Range speed;
    std::optional<Range> turn_frequency;
    Range turn_angle;
    bool uses_direction = false;
    std::optional<Range> right_turn_frequency;
    std::optional<Range> right_turn_angle;
};

const TypeBounds& bounds_for(BehaviorType t);

/// One behavior. Attributes are integers: S in Speed Units/s, F and R_f in
/// percent of control intervals, A and R_a in percent reduction of a wheel's
/// speed. `score` is the cumulative reinforcement score L.
struct Antibody {
    BehaviorType type = BehaviorType::WanderSingle;
    int speed = 50;
    std::optional<int> turn_frequency;
    int turn_angle = 0;
    std::optional<TurnDirection> direction;
    std::optional<int> right_turn_frequency;
    std::optional<int> right_turn_angle;
    int score = 0;

    friend bool operator==(const Antibody&, const Antibody&) = default;
};

/// Behavior array for one robot, indexed by antigen code. Slots are filled
/// on first encounter with the antigen.
struct Genome {
    std::array<std::optional<Antibody>, kAntigenCount> slots;

    std::optional<Antibody>& operator[](AntigenCode c) { return slots[to_int(c)]; }
    const std::optional<Antibody>& operator[](AntigenCode c) const { return slots[to_int(c)]; }
    int occupied() const;
    friend bool operator==(const Genome&, const Genome&) = default;
};

Antibody random_antibody(Rng& rng);

/// Wheel command for one control interval. Turn decisions for the
/// wandering types are drawn here, once per call.
sim::WheelSpeeds actuate(const Antibody& a, const Percept& p, Rng& rng);

// Empty when the antibody respects its type's bounds and null pattern.
std::vector<std::string> validate(const Antibody& a);

class AntibodyParseError : public std::runtime_error {
  public:
    AntibodyParseError(std::string field, const std::string& what);
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

// "WANDER_SINGLE (605, 50, 90, LEFT, NULL, NULL)"; the score is not part of it.
std::string to_string(const Antibody& a);
// Parses the text form above. The result is validated.
Antibody parse_antibody(std::string_view text);

}  // namespace abseed
