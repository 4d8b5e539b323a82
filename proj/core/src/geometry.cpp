#include "corecdyn/geometry.hpp"

#include "corecdyn/errors.hpp"

#include <cmath>
#include <string>

namespace corecdyn {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NoIntersection: return "NoIntersection";
        case ErrorKind::DegenerateTangent: return "DegenerateTangent";
        case ErrorKind::NonPositiveThickness: return "NonPositiveThickness";
        case ErrorKind::DegenerateCosine: return "DegenerateCosine";
        case ErrorKind::ConstraintInfeasible: return "ConstraintInfeasible";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

ConvexCore ConvexCore::circle(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("circle radius must be positive and finite");
    return ConvexCore(Kind::Circle, radius, radius);
}

ConvexCore ConvexCore::ellipse(double a, double b) {
    if (!(a >= b) || !(b > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("ellipse semi-axes must satisfy a >= b > 0");
    return ConvexCore(Kind::Ellipse, a, b);
}

Point2 ConvexCore::point(double theta) const {
    theta = wrap_angle(theta);
    return {a_ * std::cos(theta), b_ * std::sin(theta)};
}

Vec2 ConvexCore::velocity(double theta) const {
    theta = wrap_angle(theta);
    return {-a_ * std::sin(theta), b_ * std::cos(theta)};
}

Vec2 ConvexCore::unit_tangent(double theta) const {
    return velocity(theta).normalized();
}

Vec2 ConvexCore::outward_normal(double theta) const {
    theta = wrap_angle(theta);
    // Normal direction of the ellipse (b cos, a sin); reduces to (cos, sin)
    // for circles.
    Vec2 n{b_ * std::cos(theta), a_ * std::sin(theta)};
    return n.normalized();
}

double ConvexCore::curvature(double theta) const {
    theta = wrap_angle(theta);
    double s = std::sin(theta), c = std::cos(theta);
    double w = a_ * a_ * s * s + b_ * b_ * c * c;
    return a_ * b_ / (w * std::sqrt(w));
}

double ConvexCore::arc_length_derivative(double theta) const {
    theta = wrap_angle(theta);
    double s = std::sin(theta), c = std::cos(theta);
    return std::sqrt(a_ * a_ * s * s + b_ * b_ * c * c);
}

double ConvexCore::area() const {
    return std::numbers::pi * a_ * b_;
}

RayHit ConvexCore::ray_exit_intersection(Point2 origin, Vec2 direction) const {
    double qa, qb, qc;
    if (kind_ == Kind::Ellipse) {
        // Quadratic in the coordinates scaled to the unit disk; the ray
        // parameter t is unchanged by the scaling.
        Point2 o{origin.x / a_, origin.y / b_};
        Vec2 dir{direction.x / a_, direction.y / b_};
        qa = dir.norm_sq();
        qb = dot(o, dir);
        qc = o.norm_sq() - 1.0;
    } else {
        // Direct quadratic |origin + t dir|^2 = r^2 for circles.
        qa = direction.norm_sq();
        qb = dot(origin, direction);
        qc = origin.norm_sq() - a_ * a_;
    }
    double disc = qb * qb - qa * qc;

    RayHit hit;
    if (disc < 0.0) {
        if (disc >= -1e-12) {
            disc = 0.0; // clamp a near-tangent ray to its double root
            hit.grazing = true;
        } else {
            throw Error(ErrorKind::NoIntersection,
                        "normal ray misses the core (discriminant " +
                            std::to_string(disc) + ")");
        }
    }
    double t = (-qb - std::sqrt(disc)) / qa;
    if (t < 0.0) {
        if (t >= -1e-9) {
            t = 0.0; // origin numerically on the boundary
        } else {
            throw Error(ErrorKind::NoIntersection,
                        "ray exits the core behind its origin");
        }
    }
    Point2 p{origin.x + t * direction.x, origin.y + t * direction.y};
    hit.t = t;
    hit.theta = wrap_angle(std::atan2(p.y / b_, p.x / a_));
    return hit;
}

} // namespace corecdyn
