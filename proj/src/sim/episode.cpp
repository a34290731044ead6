#include "abseed/sim/episode.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <ostream>

#include "abseed/learning.hpp"
#include "abseed/sim/sensors.hpp"
#include "abseed/sim/supervisor.hpp"

namespace abseed::sim {

double failure_penalty(int doors_passed) {
    switch (doors_passed) {
        case 0: return 1000.0;
        case 1: return 750.0;
        default: return 500.0;
    }
}

void write_event_csv(std::ostream& os, const std::vector<EventRow>& rows) {
    os << "tick_ms,antigen_code,behavior_type,score,event\n";
    for (const EventRow& r : rows) {
        os << r.tick_ms << ',' << r.antigen_code << ',' << r.behavior_type << ',' << r.score << ',' << r.event << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows) {
    os << "tick_ms,x,y,heading\n";
    std::array<char, 128> buf{};
    for (const TrajectoryRow& r : rows) {
        std::snprintf(buf.data(), buf.size(), "%lld,%.6f,%.6f,%.6f\n", static_cast<long long>(r.tick_ms), r.x, r.y,
                      r.heading);
        os << buf.data();
    }
}

namespace {

void append_event(std::string& events, const std::string& e) {
    if (!events.empty()) events += '|';
    events += e;
}

}  // namespace

EpisodeResult run_episode(Genome genome, const ArenaSpec& arena_in, std::uint64_t seed,
                          const EpisodeOptions& options) {
    ArenaSpec arena = arena_in;
    Rng rng(seed);
    Supervisor supervisor(arena);

    RobotState robot;
    robot.pose = arena.start_pose;
    std::optional<DummyRobot> dummy;
    if (arena.dummy_start) {
        dummy.emplace();
        dummy->state.pose = *arena.dummy_start;
    }

    std::optional<ReinforcementContext> ctx;
    std::optional<BlobView> last_blob;
    std::int64_t last_camera_ms = -kCameraPeriodMs;
    WheelSpeeds command{};
    std::string pending_events;

    for (std::int64_t now = 0; now < kEpisodeLimitMs; now += kBaseStepMs) {
        if (now % kControlPeriodMs == 0) {
            supervisor.end_control_interval();
            std::array<Circle, 1> movers{};
            std::span<const Circle> others;
            if (dummy) {
                movers[0] = dummy->body();
                others = movers;
            }
            const IrReadings ir = read_ir(arena, robot, rng, others);
            Percept p = Percept::from(ir);
            if (p.v_max < kNearThreshold) {
                if (now - last_camera_ms >= kCameraPeriodMs) {
                    last_blob = read_camera(arena, robot, others);
                    last_camera_ms = now;
                    if (options.camera_vmax) options.camera_vmax->push_back(p.v_max);
                }
                p.blob = last_blob;
            }
            const AntigenCode code = classify(p);

            int score = 0;
            std::string events = std::move(pending_events);
            pending_events.clear();
            if (options.learning) {
                if (ctx) {
                    score = score_transition(*ctx, p, code);
                    if (genome[ctx->prev_code] && apply_score(genome, ctx->prev_code, score, rng)) {
                        append_event(events, "replace_score:" + std::to_string(to_int(ctx->prev_code)));
                    }
                    ctx->advance(p, code, now);
                } else {
                    ctx = ReinforcementContext::start(p, code, now);
                }
                if (stagnation_check(*ctx, now, genome, code, rng)) append_event(events, "replace_stagnation");
            }
            if (!genome[code]) {
                genome[code] = random_antibody(rng);
                append_event(events, "create");
            }
            const Antibody& active = *genome[code];
            command = actuate(active, p, rng);
            if (dummy) dummy->control(arena, robot, rng);

            if (options.events) {
                options.events->push_back({now, to_int(code), static_cast<int>(active.type), score, events});
            }
            if (options.trajectory) {
                options.trajectory->push_back({now, robot.pose.x, robot.pose.y, robot.pose.heading});
            }
        }

        robot.wheel_speeds = command;
        const double dt = static_cast<double>(std::min(kBaseStepMs, kEpisodeLimitMs - now)) / 1000.0;
        const Vec2 before = robot.pose.position();
        if (dummy) {
            const Circle body = dummy->body();
            robot = step_kinematics(arena, robot, dt, std::span<const Circle>(&body, 1));
            const Circle mission{robot.pose.position(), robot.body_radius};
            dummy->state = step_kinematics(arena, dummy->state, dt,
                                           std::span<const Circle>(&mission, 1));
        } else {
            robot = step_kinematics(arena, robot, dt);
        }
        supervisor.note_contact(robot.in_contact);
        if (robot.in_contact) append_event(pending_events, "contact");

        const SupervisorEvents ev = supervisor.tick(arena, robot, before, dummy);
        for (int door : ev.doors_closed) append_event(pending_events, "door_closed:" + std::to_string(door));
        if (ev.dummy_repositioned) append_event(pending_events, "dummy_reposition");
        if (ev.finished) break;
    }

    EpisodeResult result;
    result.genome = std::move(genome);
    result.simulated_ms = robot.clock_ms;
    result.outcome.c = supervisor.collisions();
    result.outcome.doors_passed = supervisor.doors_passed();
    if (supervisor.finished()) {
        result.outcome.completed = true;
        result.outcome.t = supervisor.finish_ms() / 1000.0;
    } else {
        result.outcome.t = kEpisodeLimitMs / 1000.0 + failure_penalty(supervisor.doors_passed());
    }
    if (options.events) {
        append_event(pending_events, supervisor.finished() ? "finish" : "timeout");
        const EventRow last = options.events->empty() ? EventRow{} : options.events->back();
        options.events->push_back({robot.clock_ms, last.antigen_code, last.behavior_type, 0, pending_events});
    }
    return result;
}

}  // namespace abseed::sim
