#pragma once

#include "corecdyn/angle.hpp"
#include "corecdyn/vec2.hpp"

namespace corecdyn {

/// Result of shooting a ray at the core boundary: first-hit parameter and the
/// boundary angle of the hit point.
struct RayHit {
    double t = 0.0;       // distance along the (unit) direction, >= 0
    double theta = 0.0;   // boundary parameter of the hit point, in [0, 2*pi)
    bool grazing = false; // discriminant clamped at a near-tangent double root
};

/// Closed convex core curve, parametrized counterclockwise by theta in
/// [0, 2*pi). Circles and axis-aligned ellipses (a >= b > 0) carry closed-form
/// geometry; that is all the dynamics needs.
class ConvexCore {
public:
    enum class Kind { UnitCircle, Circle, Ellipse };

    static ConvexCore unit_circle() { return ConvexCore(Kind::UnitCircle, 1.0, 1.0); }
    static ConvexCore circle(double radius);
    static ConvexCore ellipse(double a, double b);

    Kind kind() const { return kind_; }
    double semi_major() const { return a_; }
    double semi_minor() const { return b_; }

    /// Boundary point p(theta) = (a cos, b sin).
    Point2 point(double theta) const;

    /// Outward unit normal.
    Vec2 outward_normal(double theta) const;

    /// Unit tangent in the direction of increasing theta.
    Vec2 unit_tangent(double theta) const;

    /// Non-normalized velocity p'(theta).
    Vec2 velocity(double theta) const;

    /// Curvature, >= 0 by convexity.
    double curvature(double theta) const;

    /// |p'(theta)|, converting d/dtheta to d/ds.
    double arc_length_derivative(double theta) const;

    /// Signed area enclosed by the core (pi*a*b).
    double area() const;

    /// First intersection of the ray origin + t*direction with the boundary.
    /// The origin must lie outside the core and direction must be a unit
    /// vector. Throws Error(NoIntersection) when the ray misses. A
    /// discriminant in [-1e-12, 0) is clamped to the tangency double root and
    /// flagged as grazing.
    RayHit ray_exit_intersection(Point2 origin, Vec2 direction) const;

private:
    ConvexCore(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    Kind kind_;
    double a_; // semi-major axis (radius for circles)
    double b_; // semi-minor axis
};

} // namespace corecdyn
