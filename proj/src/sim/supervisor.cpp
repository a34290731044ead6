#include "abseed/sim/supervisor.hpp"

#include <algorithm>

#include "abseed/sim/sensors.hpp"

namespace abseed::sim {

void DummyRobot::control(const ArenaSpec& arena, const RobotState& mission, Rng& rng) {
    if (turn_ticks_left > 0) {
        --turn_ticks_left;
    } else {
        const Circle other{mission.pose.position(), mission.body_radius};
        const IrReadings ir = read_ir(arena, state, rng, std::span<const Circle>(&other, 1));
        if (*std::max_element(ir.begin(), ir.end()) > kDummyTurnTrigger) {
            turn_ticks_left = uniform_int(rng, 1, 8);
            turn_sign = uniform_int(rng, 0, 1) == 0 ? -1.0 : 1.0;
        }
    }
    state.wheel_speeds = turn_ticks_left > 0 ? WheelSpeeds{-turn_sign * kDummyCruise, turn_sign * kDummyCruise}
                                             : WheelSpeeds{kDummyCruise, kDummyCruise};
}

Supervisor::Supervisor(const ArenaSpec& arena) {
    const int room = arena.room_at(arena.start_pose.position());
    current_room_ = room < 0 ? 0 : room;
}

SupervisorEvents Supervisor::tick(ArenaSpec& arena, const RobotState& robot, Vec2 previous_center,
                                  std::optional<DummyRobot>& dummy) {
    SupervisorEvents ev;
    const Vec2 c = robot.pose.position();

    for (std::size_t i = 0; i < arena.doors.size(); ++i) {
        Door& d = arena.doors[i];
        if (d.state == DoorState::Closed) continue;
        const Room* after = arena.room(d.room_after);
        if (after != nullptr && point_in_convex(after->polygon, c, 0.0) &&
            distance(d.segment, c) >= robot.body_radius) {
            d.state = DoorState::Closed;
            ++doors_passed_;
            ev.doors_closed.push_back(static_cast<int>(i));
        }
    }

    const int room = arena.room_at(c);
    if (room >= 0 && room != current_room_) {
        current_room_ = room;
        pending_dummy_room_ = room;
    }
    if (dummy && pending_dummy_room_) {
        const auto it = arena.dummy_reposition_points.find(*pending_dummy_room_);
        if (it == arena.dummy_reposition_points.end()) {
            pending_dummy_room_.reset();
        } else if (norm(it->second.position() - c) > robot.body_radius + dummy->state.body_radius + 0.01) {
            dummy->state.pose = it->second;
            dummy->turn_ticks_left = 0;
            pending_dummy_room_.reset();
            ev.dummy_repositioned = true;
        }
    }

    if (!finished_ && segments_intersect({previous_center, c}, arena.finish_line)) {
        finished_ = true;
        finish_ms_ = robot.clock_ms;
        ev.finished = true;
    }
    return ev;
}

void Supervisor::note_contact(bool in_contact) {
    if (!in_contact) return;
    contact_this_interval_ = true;
    if (!contact_episode_) {
        contact_episode_ = true;
        ++collisions_;
    }
}

void Supervisor::end_control_interval() {
    if (!contact_this_interval_) contact_episode_ = false;
    contact_this_interval_ = false;
}

}  // namespace abseed::sim
