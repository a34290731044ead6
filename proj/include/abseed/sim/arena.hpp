#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abseed/sim/geometry.hpp"

namespace abseed::sim {

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;  // radians, (-pi, pi]

    Vec2 position() const { return {x, y}; }
    friend bool operator==(const Pose&, const Pose&) = default;
};

enum class DoorState { Open, Closed };

struct Door {
    Segment segment;
    int room_before = 0;
    int room_after = 0;
    DoorState state = DoorState::Open;
};

struct Marker {
    Segment segment;
    std::string color;
};

struct Room {
    int id = 0;
    std::vector<Vec2> polygon;
};

struct ArenaSpec {
    std::string name;
    std::vector<Segment> walls;
    std::vector<Door> doors;
    std::vector<Marker> markers;
    std::vector<Circle> obstacles;
    std::vector<Room> rooms;
    Pose start_pose;
    std::optional<Pose> dummy_start;
    std::map<int, Pose> dummy_reposition_points;
    Segment finish_line;

    const Room* room(int id) const;
    // Id of the first room containing p, or -1.
    int room_at(Vec2 p) const;
    int last_room_id() const;
    bool has_dummy() const { return dummy_start.has_value(); }
};

class ArenaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ArenaParseError : public ArenaError {
  public:
    ArenaParseError(int line, const std::string& what);
    int line() const { return line_; }

  private:
    int line_;
};

class ArenaValidationError : public ArenaError {
  public:
    ArenaValidationError(std::string invariant, const std::string& detail);
    const std::string& invariant() const { return invariant_; }

  private:
    std::string invariant_;
};

/// Parses the line-oriented arena format and validates the geometry.
///
/// One record per line, keyword first, lengths in meters, headings in degrees:
///
///     ARENA <name>
///     ROOM <id> <x y> <x y> <x y> ...          convex polygon
///     WALL <x1 y1 x2 y2>
///     DOOR <x1 y1 x2 y2> <room_before> <room_after> [open|closed]
///     MARKER <x1 y1 x2 y2> <color>
///     OBSTACLE <cx cy radius>
///     START <x y heading>
///     FINISH <x1 y1 x2 y2>
///     DUMMY start <x y heading>
///     DUMMY room <id> <x y heading>
///
/// `#` starts a comment. Throws ArenaParseError (with line number) or
/// ArenaValidationError (naming the invariant).
ArenaSpec load_arena(std::string_view text);
ArenaSpec load_arena_file(const std::string& path);

void validate_arena(const ArenaSpec& arena);

// "world1" and "world2" are compiled in.
std::optional<std::string_view> bundled_arena_text(std::string_view name);
ArenaSpec bundled_arena(std::string_view name);
// Bundled name if it matches one, otherwise a file path.
ArenaSpec resolve_arena(const std::string& name_or_path);

}  // namespace abseed::sim
