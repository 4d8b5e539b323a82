#pragma once

#include <cmath>
#include <numbers>

namespace corecdyn {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduce an angle to the canonical interval [0, 2*pi).
inline double wrap_angle(double theta) {
    double r = std::fmod(theta, two_pi);
    if (r < 0.0) r += two_pi;
    // fmod can return exactly two_pi after the correction when theta is a
    // tiny negative number; fold that back to zero.
    if (r >= two_pi) r = 0.0;
    return r;
}

/// Shortest distance between two angles on the circle, in [0, pi].
inline double angular_distance(double a, double b) {
    double r = std::fabs(wrap_angle(a) - wrap_angle(b));
    return r > std::numbers::pi ? two_pi - r : r;
}

/// Signed difference a - b folded into (-pi, pi].
inline double angular_difference(double a, double b) {
    double r = wrap_angle(a - b);
    return r > std::numbers::pi ? r - two_pi : r;
}

} // namespace corecdyn
