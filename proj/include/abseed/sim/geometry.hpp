#pragma once

#include <cmath>
#include <optional>
#include <span>

namespace abseed::sim {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
    friend Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
    friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct Segment {
    Vec2 a;
    Vec2 b;
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

// Wraps to (-pi, pi].
double wrap_angle(double angle);

Vec2 closest_point(const Segment& s, Vec2 p);
double distance(const Segment& s, Vec2 p);

// True when p lies on s within tol (perpendicular and along-segment).
bool on_segment(const Segment& s, Vec2 p, double tol = 1e-9);

// Distance along the unit direction `dir` from `origin` to the first hit, if any.
// Collinear overlaps are treated as misses. An origin inside a circle hits at 0.
std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Segment& s);
std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Circle& c);

// Proper or touching intersection of two closed segments.
bool segments_intersect(const Segment& p, const Segment& q);

// Polygon given in either winding; boundary counts as inside within tol.
bool point_in_convex(std::span<const Vec2> polygon, Vec2 p, double tol = 1e-9);
bool is_convex(std::span<const Vec2> polygon);

}  // namespace abseed::sim
