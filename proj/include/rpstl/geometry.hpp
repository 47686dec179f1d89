#pragma once

#include <algorithm>
#include <cmath>

namespace rpstl {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double px, double py) : x(px), y(py) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

    double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Axis-aligned rectangle, closed on all sides.
struct Rect {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;

    bool contains(const Vec2& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }

    /// Euclidean distance from p to the rectangle (0 when inside).
    double distance_to(const Vec2& p) const {
        double dx = std::max({x_min - p.x, 0.0, p.x - x_max});
        double dy = std::max({y_min - p.y, 0.0, p.y - y_max});
        return std::hypot(dx, dy);
    }
};

/// Distance from point p to segment [a, b].
inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.x * ab.x + ab.y * ab.y;
    if (len2 == 0.0) return distance(p, a);
    double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + ab * t);
}

}  // namespace rpstl
