#include "abseed/sim/arena.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "abseed/sim/kinematics.hpp"

namespace abseed::sim {

const Room* ArenaSpec::room(int id) const {
    for (const Room& r : rooms) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

int ArenaSpec::room_at(Vec2 p) const {
    for (const Room& r : rooms) {
        if (point_in_convex(r.polygon, p, 0.0)) return r.id;
    }
    return -1;
}

int ArenaSpec::last_room_id() const {
    int id = -1;
    for (const Room& r : rooms) id = std::max(id, r.id);
    return id;
}

ArenaParseError::ArenaParseError(int line, const std::string& what)
    : ArenaError("arena line " + std::to_string(line) + ": " + what), line_(line) {}

ArenaValidationError::ArenaValidationError(std::string invariant, const std::string& detail)
    : ArenaError("arena invalid (" + invariant + "): " + detail), invariant_(std::move(invariant)) {}

namespace {

constexpr double kDegToRad = kPi / 180.0;

class LineReader {
  public:
    LineReader(int line, std::vector<std::string> tokens) : line_(line), tokens_(std::move(tokens)) {}

    std::size_t remaining() const { return tokens_.size() - pos_; }

    std::string word(const char* what) {
        if (pos_ >= tokens_.size()) fail(std::string("missing ") + what);
        return tokens_[pos_++];
    }

    double number(const char* what) {
        const std::string tok = word(what);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
            fail(std::string("expected number for ") + what + ", got '" + tok + "'");
        }
        return v;
    }

    int integer(const char* what) {
        const std::string tok = word(what);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            fail(std::string("expected integer for ") + what + ", got '" + tok + "'");
        }
        return v;
    }

    Vec2 point(const char* what) {
        const double x = number(what);
        const double y = number(what);
        return {x, y};
    }

    Segment segment() {
        const Vec2 a = point("segment start");
        const Vec2 b = point("segment end");
        if (a == b) fail("zero-length segment");
        return {a, b};
    }

    Pose pose() {
        const Vec2 p = point("position");
        const double deg = number("heading");
        return {p.x, p.y, wrap_angle(deg * kDegToRad)};
    }

    void done() {
        if (pos_ != tokens_.size()) fail("unexpected trailing token '" + tokens_[pos_] + "'");
    }

    [[noreturn]] void fail(const std::string& what) const { throw ArenaParseError(line_, what); }

  private:
    int line_;
    std::vector<std::string> tokens_;
    std::size_t pos_ = 0;
};

bool segment_on_polygon_edge(const Segment& s, const std::vector<Vec2>& polygon) {
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Segment edge{polygon[i], polygon[(i + 1) % polygon.size()]};
        if (on_segment(edge, s.a) && on_segment(edge, s.b)) return true;
    }
    return false;
}

bool circle_overlaps_static(const ArenaSpec& arena, Vec2 c, double r) {
    for (const Segment& w : arena.walls) {
        if (distance(w, c) < r) return true;
    }
    for (const Door& d : arena.doors) {
        if (d.state == DoorState::Closed && distance(d.segment, c) < r) return true;
    }
    for (const Circle& o : arena.obstacles) {
        if (norm(c - o.center) < o.radius + r) return true;
    }
    return false;
}

}  // namespace

ArenaSpec load_arena(std::string_view text) {
    ArenaSpec arena;
    bool have_start = false;
    bool have_finish = false;
    bool any_record = false;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;
        any_record = true;

        const std::string keyword = tokens.front();
        tokens.erase(tokens.begin());
        LineReader r(line_no, std::move(tokens));

        if (keyword == "ARENA") {
            arena.name = r.word("arena name");
        } else if (keyword == "ROOM") {
            Room room;
            room.id = r.integer("room id");
            if (room.id < 0) r.fail("room id must be non-negative");
            if (arena.room(room.id) != nullptr) r.fail("duplicate room id " + std::to_string(room.id));
            while (r.remaining() > 0) room.polygon.push_back(r.point("room vertex"));
            if (room.polygon.size() < 3) r.fail("room needs at least 3 vertices");
            arena.rooms.push_back(std::move(room));
        } else if (keyword == "WALL") {
            arena.walls.push_back(r.segment());
        } else if (keyword == "DOOR") {
            Door door;
            door.segment = r.segment();
            door.room_before = r.integer("room_before");
            door.room_after = r.integer("room_after");
            if (r.remaining() > 0) {
                const std::string st = r.word("door state");
                if (st == "open") {
                    door.state = DoorState::Open;
                } else if (st == "closed") {
                    door.state = DoorState::Closed;
                } else {
                    r.fail("door state must be open or closed, got '" + st + "'");
                }
            }
            arena.doors.push_back(door);
        } else if (keyword == "MARKER") {
            Marker m;
            m.segment = r.segment();
            m.color = r.word("marker color");
            arena.markers.push_back(std::move(m));
        } else if (keyword == "OBSTACLE") {
            Circle c;
            c.center = r.point("obstacle center");
            c.radius = r.number("obstacle radius");
            if (c.radius <= 0.0) r.fail("obstacle radius must be positive");
            arena.obstacles.push_back(c);
        } else if (keyword == "START") {
            if (have_start) r.fail("duplicate START");
            arena.start_pose = r.pose();
            have_start = true;
        } else if (keyword == "FINISH") {
            if (have_finish) r.fail("duplicate FINISH");
            arena.finish_line = r.segment();
            have_finish = true;
        } else if (keyword == "DUMMY") {
            const std::string what = r.word("DUMMY kind");
            if (what == "start") {
                if (arena.dummy_start) r.fail("duplicate DUMMY start");
                arena.dummy_start = r.pose();
            } else if (what == "room") {
                const int id = r.integer("room id");
                if (arena.dummy_reposition_points.contains(id)) {
                    r.fail("duplicate DUMMY room " + std::to_string(id));
                }
                arena.dummy_reposition_points[id] = r.pose();
            } else {
                r.fail("DUMMY kind must be start or room, got '" + what + "'");
            }
        } else {
            r.fail("unknown record '" + keyword + "'");
        }
        r.done();
    }

    if (!any_record) throw ArenaParseError(line_no, "empty arena description");
    if (!have_start) throw ArenaParseError(line_no, "missing START record");
    if (!have_finish) throw ArenaParseError(line_no, "missing FINISH record");
    if (arena.rooms.empty()) throw ArenaParseError(line_no, "missing ROOM records");

    validate_arena(arena);
    return arena;
}

void validate_arena(const ArenaSpec& arena) {
    for (const Room& room : arena.rooms) {
        if (!is_convex(room.polygon)) {
            throw ArenaValidationError("convex rooms", "room " + std::to_string(room.id) + " is not convex");
        }
    }
    if (arena.room(0) == nullptr) throw ArenaValidationError("room 0 exists", "no room with id 0");

    for (std::size_t i = 0; i < arena.doors.size(); ++i) {
        const Door& d = arena.doors[i];
        const Room* before = arena.room(d.room_before);
        const Room* after = arena.room(d.room_after);
        const std::string which = "door " + std::to_string(i);
        if (before == nullptr || after == nullptr) {
            throw ArenaValidationError("door rooms exist", which + " references an unknown room");
        }
        if (d.room_before == d.room_after) {
            throw ArenaValidationError("door joins two rooms", which + " has the same room on both sides");
        }
        if (!segment_on_polygon_edge(d.segment, before->polygon) ||
            !segment_on_polygon_edge(d.segment, after->polygon)) {
            throw ArenaValidationError("door on room boundary", which + " does not lie on the shared boundary");
        }
    }

    for (std::size_t i = 0; i < arena.markers.size(); ++i) {
        const Segment& m = arena.markers[i].segment;
        bool ok = false;
        for (const Segment& w : arena.walls) ok = ok || (on_segment(w, m.a) && on_segment(w, m.b));
        for (const Door& d : arena.doors) ok = ok || (on_segment(d.segment, m.a) && on_segment(d.segment, m.b));
        if (!ok) {
            throw ArenaValidationError("marker on wall", "marker " + std::to_string(i) +
                                                             " does not coincide with a wall or door segment");
        }
    }

    const Room* first = arena.room(0);
    if (!point_in_convex(first->polygon, arena.start_pose.position())) {
        throw ArenaValidationError("start pose inside room 0", "start pose lies outside room 0");
    }
    if (circle_overlaps_static(arena, arena.start_pose.position(), kBodyRadius)) {
        throw ArenaValidationError("start pose clear", "robot body at the start pose overlaps static geometry");
    }
    const Room* last = arena.room(arena.last_room_id());
    if (!point_in_convex(last->polygon, arena.finish_line.a) || !point_in_convex(last->polygon, arena.finish_line.b)) {
        throw ArenaValidationError("finish line inside last room",
                                   "finish line leaves room " + std::to_string(last->id));
    }

    if (arena.dummy_start) {
        if (arena.room_at(arena.dummy_start->position()) < 0 ||
            circle_overlaps_static(arena, arena.dummy_start->position(), kBodyRadius)) {
            throw ArenaValidationError("dummy start inside a room", "dummy start lies outside every room");
        }
        for (const Room& room : arena.rooms) {
            const auto it = arena.dummy_reposition_points.find(room.id);
            if (it == arena.dummy_reposition_points.end()) {
                throw ArenaValidationError("dummy reposition point per room",
                                           "room " + std::to_string(room.id) + " has no DUMMY room point");
            }
            if (!point_in_convex(room.polygon, it->second.position()) ||
                circle_overlaps_static(arena, it->second.position(), kBodyRadius)) {
                throw ArenaValidationError("dummy reposition point per room",
                                           "reposition point for room " + std::to_string(room.id) +
                                               " lies outside it or overlaps static geometry");
            }
        }
    } else if (!arena.dummy_reposition_points.empty()) {
        throw ArenaValidationError("dummy reposition point per room", "DUMMY room records without DUMMY start");
    }
}

ArenaSpec load_arena_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArenaError("cannot open arena file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_arena(ss.str());
}

ArenaSpec bundled_arena(std::string_view name) {
    const auto text = bundled_arena_text(name);
    if (!text) throw ArenaError("no bundled arena named '" + std::string(name) + "'");
    return load_arena(*text);
}

ArenaSpec resolve_arena(const std::string& name_or_path) {
    if (bundled_arena_text(name_or_path)) return bundled_arena(name_or_path);
    return load_arena_file(name_or_path);
}

}  // namespace abseed::sim
