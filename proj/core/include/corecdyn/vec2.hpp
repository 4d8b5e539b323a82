#pragma once

#include <cmath>

namespace corecdyn {

/// Plain 2D vector. Also used for points; the distinction carries no weight
/// at this scale.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }

    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }

    Vec2 normalized() const {
        double n = norm();
        return {x / n, y / n};
    }

    /// Counterclockwise quarter turn.
    Vec2 rot90() const { return {-y, x}; }

    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

using Point2 = Vec2;

} // namespace corecdyn
