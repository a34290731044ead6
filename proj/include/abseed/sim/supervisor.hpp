#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abseed/rng.hpp"
#include "abseed/sim/kinematics.hpp"

namespace abseed::sim {

inline constexpr double kDummyCruise = 400.0;  // Speed Units
inline constexpr int kDummyTurnTrigger = 250;  // IR reading

// Wandering robot that shares the mission robot's room. Not evolved.
struct DummyRobot {
    RobotState state;
    int turn_ticks_left = 0;
    double turn_sign = 1.0;

    Circle body() const { return {state.pose.position(), state.body_radius}; }
    // One control decision: cruise straight, or turn on the spot for a random
    // number of ticks once anything reads above the trigger.
    void control(const ArenaSpec& arena, const RobotState& mission, Rng& rng);
};

struct SupervisorEvents {
    std::vector<int> doors_closed;
    bool dummy_repositioned = false;
    bool finished = false;
};

/// Referee for one episode: closes doors behind the robot, keeps the dummy in
/// the robot's room, detects the finish line and tallies collisions.
class Supervisor {
  public:
    explicit Supervisor(const ArenaSpec& arena);

    // Call after every kinematics step with the centre before that step.
    SupervisorEvents tick(ArenaSpec& arena, const RobotState& robot, Vec2 previous_center,
                          std::optional<DummyRobot>& dummy);

    // Collisions are counted once per contact episode; an episode ends after a
    // full control interval without contact.
    void note_contact(bool in_contact);
    void end_control_interval();

    int doors_passed() const { return doors_passed_; }
    int collisions() const { return collisions_; }
    int current_room() const { return current_room_; }
    bool finished() const { return finished_; }
    std::int64_t finish_ms() const { return finish_ms_; }

  private:
    int doors_passed_ = 0;
    int collisions_ = 0;
    int current_room_ = 0;
    std::optional<int> pending_dummy_room_;
    bool finished_ = false;
    std::int64_t finish_ms_ = 0;
    bool contact_episode_ = false;
    bool contact_this_interval_ = false;
};

}  // namespace abseed::sim
