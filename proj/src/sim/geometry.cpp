#include "abseed/sim/geometry.hpp"

#include <algorithm>

namespace abseed::sim {

double wrap_angle(double angle) {
    double a = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

Vec2 closest_point(const Segment& s, Vec2 p) {
    const Vec2 d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return s.a;
    const double u = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    return s.a + d * u;
}

double distance(const Segment& s, Vec2 p) { return norm(p - closest_point(s, p)); }

bool on_segment(const Segment& s, Vec2 p, double tol) { return distance(s, p) <= tol; }

std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Segment& s) {
    const Vec2 e = s.b - s.a;
    const double denom = cross(dir, e);
    if (std::abs(denom) < 1e-15) return std::nullopt;
    const Vec2 w = s.a - origin;
    const double t = cross(w, e) / denom;
    const double u = cross(w, dir) / denom;
    if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
    return t;
}

std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Circle& c) {
    const Vec2 m = origin - c.center;
    const double b = dot(m, dir);
    const double k = dot(m, m) - c.radius * c.radius;
    if (k <= 0.0) return 0.0;
    if (b > 0.0) return std::nullopt;
    const double disc = b * b - k;
    if (disc < 0.0) return std::nullopt;
    return -b - std::sqrt(disc);
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
    const double v = cross(b - a, c - a);
    if (v > 1e-15) return 1;
    if (v < -1e-15) return -1;
    return 0;
}

bool within_box(Vec2 a, Vec2 b, Vec2 p) {
    return p.x >= std::min(a.x, b.x) - 1e-15 && p.x <= std::max(a.x, b.x) + 1e-15 &&
           p.y >= std::min(a.y, b.y) - 1e-15 && p.y <= std::max(a.y, b.y) + 1e-15;
}

}  // namespace

bool segments_intersect(const Segment& p, const Segment& q) {
    const int o1 = orientation(p.a, p.b, q.a);
    const int o2 = orientation(p.a, p.b, q.b);
    const int o3 = orientation(q.a, q.b, p.a);
    const int o4 = orientation(q.a, q.b, p.b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && within_box(p.a, p.b, q.a)) return true;
    if (o2 == 0 && within_box(p.a, p.b, q.b)) return true;
    if (o3 == 0 && within_box(q.a, q.b, p.a)) return true;
    if (o4 == 0 && within_box(q.a, q.b, p.b)) return true;
    return false;
}

bool point_in_convex(std::span<const Vec2> polygon, Vec2 p, double tol) {
    const std::size_t n = polygon.size();
    if (n < 3) return false;
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Segment edge{polygon[i], polygon[(i + 1) % n]};
        if (on_segment(edge, p, tol)) return true;
        const double c = cross(edge.b - edge.a, p - edge.a);
        const int s = c > 0.0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            return false;
        }
    }
    return true;
}

bool is_convex(std::span<const Vec2> polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return false;
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = polygon[i];
        const Vec2 b = polygon[(i + 1) % n];
        const Vec2 c = polygon[(i + 2) % n];
        const double z = cross(b - a, c - b);
        if (std::abs(z) < 1e-15) continue;
        const int s = z > 0.0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            return false;
        }
    }
    return sign != 0;
}

}  // namespace abseed::sim
