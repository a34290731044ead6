#include "abseed/antibody.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace abseed {

namespace {

constexpr std::array<std::string_view, kBehaviorTypeCount> kNames = {
    "WANDER_SINGLE", "WANDER_BOTH", "FORWARD_TURN", "STATIC_TURN", "REVERSE_TURN", "TRACK_MARKERS",
};

const std::array<TypeBounds, kBehaviorTypeCount> kBounds = {{
    {{50, 800}, Range{10, 90}, {10, 110}, true, std::nullopt, std::nullopt},
    {{50, 800}, Range{10, 90}, {10, 110}, false, Range{10, 90}, Range{10, 110}},
    {{50, 800}, std::nullopt, {20, 200}, true, std::nullopt, std::nullopt},
    {{50, 800}, std::nullopt, {100, 100}, true, std::nullopt, std::nullopt},
    {{500, 800}, std::nullopt, {20, 200}, true, std::nullopt, std::nullopt},
    {{50, 800}, std::nullopt, {0, 30}, false, std::nullopt, std::nullopt},
}};

int draw(Rng& rng, Range r) { return uniform_int(rng, r.min, r.max); }

double reduced(double speed, double percent) { return speed * (1.0 - percent / 100.0); }

}  // namespace

std::string_view behavior_name(BehaviorType t) { return kNames[static_cast<int>(t)]; }

std::optional<BehaviorType> behavior_from_name(std::string_view name) {
    for (int i = 0; i < kBehaviorTypeCount; ++i) {
        if (kNames[i] == name) return static_cast<BehaviorType>(i);
    }
    return std::nullopt;
}

const TypeBounds& bounds_for(BehaviorType t) { return kBounds[static_cast<int>(t)]; }

int Genome::occupied() const {
    return static_cast<int>(std::count_if(slots.begin(), slots.end(), [](const auto& s) { return s.has_value(); }));
}

Antibody random_antibody(Rng& rng) {
    Antibody a;
    a.type = static_cast<BehaviorType>(uniform_int(rng, 0, kBehaviorTypeCount - 1));
    const TypeBounds& b = bounds_for(a.type);
    a.speed = draw(rng, b.speed);
    if (b.turn_frequency) a.turn_frequency = draw(rng, *b.turn_frequency);
    a.turn_angle = draw(rng, b.turn_angle);
    if (b.uses_direction) a.direction = uniform_int(rng, 0, 1) == 0 ? TurnDirection::Left : TurnDirection::Right;
    if (b.right_turn_frequency) a.right_turn_frequency = draw(rng, *b.right_turn_frequency);
    if (b.right_turn_angle) a.right_turn_angle = draw(rng, *b.right_turn_angle);
    a.score = 0;
    return a;
}

sim::WheelSpeeds actuate(const Antibody& a, const Percept& p, Rng& rng) {
    const double s = a.speed;
    const bool left = a.direction.value_or(TurnDirection::Left) == TurnDirection::Left;
    sim::WheelSpeeds w{s, s};
    switch (a.type) {
        case BehaviorType::WanderSingle:
            if (bernoulli(rng, a.turn_frequency.value_or(0) / 100.0)) {
                (left ? w.left : w.right) = reduced(s, a.turn_angle);
            }
            break;
        case BehaviorType::WanderBoth:
            // Left and right turn draws are independent; both may fire.
            if (bernoulli(rng, a.turn_frequency.value_or(0) / 100.0)) w.left = reduced(s, a.turn_angle);
            if (bernoulli(rng, a.right_turn_frequency.value_or(0) / 100.0)) {
                w.right = reduced(s, a.right_turn_angle.value_or(0));
            }
            break;
        case BehaviorType::ForwardTurn:
            (left ? w.left : w.right) = reduced(s, a.turn_angle);
            break;
        case BehaviorType::StaticTurn:
            w = left ? sim::WheelSpeeds{-s, s} : sim::WheelSpeeds{s, -s};
            break;
        case BehaviorType::ReverseTurn:
            w = {-s, -s};
            (left ? w.left : w.right) = reduced(-s, a.turn_angle);
            break;
        case BehaviorType::TrackMarkers:
            if (p.blob_present()) {
                const double off = p.blob->blob_center_offset;
                const double cut = a.turn_angle * std::abs(off);
                (off > 0.0 ? w.right : w.left) = reduced(s, cut);
            }
            break;
    }
    return w;
}

std::vector<std::string> validate(const Antibody& a) {
    std::vector<std::string> out;
    const TypeBounds& b = bounds_for(a.type);
    const std::string type(behavior_name(a.type));
    auto check = [&](const char* name, Range r, int v) {
        if (!r.contains(v)) {
            out.push_back(std::string(name) + "=" + std::to_string(v) + " outside [" + std::to_string(r.min) + ", " +
                          std::to_string(r.max) + "] for " + type);
        }
    };
    auto check_opt = [&](const char* name, const std::optional<Range>& r, const std::optional<int>& v) {
        if (r && !v) out.push_back(std::string(name) + " must be set for " + type);
        if (!r && v) out.push_back(std::string(name) + " must be NULL for " + type);
        if (r && v) check(name, *r, *v);
    };
    check("S", b.speed, a.speed);
    check_opt("F", b.turn_frequency, a.turn_frequency);
    check("A", b.turn_angle, a.turn_angle);
    if (b.uses_direction && !a.direction) out.push_back("D must be set for " + type);
    if (!b.uses_direction && a.direction) out.push_back("D must be NULL for " + type);
    check_opt("R_f", b.right_turn_frequency, a.right_turn_frequency);
    check_opt("R_a", b.right_turn_angle, a.right_turn_angle);
    return out;
}

AntibodyParseError::AntibodyParseError(std::string field, const std::string& what)
    : std::runtime_error("antibody field " + field + ": " + what), field_(std::move(field)) {}

std::string to_string(const Antibody& a) {
    auto num = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("NULL"); };
    std::string dir = "NULL";
    if (a.direction) dir = *a.direction == TurnDirection::Left ? "LEFT" : "RIGHT";
    std::ostringstream os;
    os << behavior_name(a.type) << " (" << a.speed << ", " << num(a.turn_frequency) << ", " << a.turn_angle << ", "
       << dir << ", " << num(a.right_turn_frequency) << ", " << num(a.right_turn_angle) << ")";
    return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<int> parse_field(std::string_view tok, const char* field, bool nullable) {
    if (tok == "NULL") {
        if (!nullable) throw AntibodyParseError(field, "must not be NULL");
        return std::nullopt;
    }
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw AntibodyParseError(field, "expected integer or NULL, got '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace

Antibody parse_antibody(std::string_view text) {
    text = trim(text);
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')') {
        throw AntibodyParseError("T", "expected 'TYPE (S, F, A, D, R_f, R_a)', got '" + std::string(text) + "'");
    }
    const std::string_view name = trim(text.substr(0, open));
    const auto type = behavior_from_name(name);
    if (!type) throw AntibodyParseError("T", "unknown behavior type '" + std::string(name) + "'");

    std::vector<std::string_view> fields;
    std::string_view body = text.substr(open + 1, text.size() - open - 2);
    while (true) {
        const auto comma = body.find(',');
        fields.push_back(trim(body.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    static constexpr std::array<const char*, 6> kFields = {"S", "F", "A", "D", "R_f", "R_a"};
    if (fields.size() != kFields.size()) {
        throw AntibodyParseError(kFields[std::min(fields.size(), kFields.size() - 1)],
                                 "expected 6 fields, got " + std::to_string(fields.size()));
    }

    Antibody a;
    a.type = *type;
    a.speed = *parse_field(fields[0], "S", false);
    a.turn_frequency = parse_field(fields[1], "F", true);
    a.turn_angle = *parse_field(fields[2], "A", false);
    if (fields[3] == "LEFT") {
        a.direction = TurnDirection::Left;
    } else if (fields[3] == "RIGHT") {
        a.direction = TurnDirection::Right;
    } else if (fields[3] != "NULL") {
        throw AntibodyParseError("D", "expected LEFT, RIGHT or NULL, got '" + std::string(fields[3]) + "'");
    }
    a.right_turn_frequency = parse_field(fields[4], "R_f", true);
    a.right_turn_angle = parse_field(fields[5], "R_a", true);

    if (const auto problems = validate(a); !problems.empty()) {
        const std::string& first = problems.front();
        throw AntibodyParseError(first.substr(0, first.find_first_of("= ")), first);
    }
    return a;
}

}  // namespace abseed
