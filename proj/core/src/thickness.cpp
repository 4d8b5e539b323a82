#include "corecdyn/thickness.hpp"

#include "corecdyn/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace corecdyn {

ThicknessProfile::ThicknessProfile(double d0, std::vector<Harmonic> terms)
    : d0_(d0), terms_(std::move(terms)) {
    if (!(d0_ > 0.0) || !std::isfinite(d0_))
        throw Error(ErrorKind::NonPositiveThickness,
                    "base thickness must be positive, got " + std::to_string(d0_));
    double amp = 0.0;
    for (const auto& h : terms_) {
        if (h.frequency < 1)
            throw Error(ErrorKind::ConfigError, "harmonic frequency must be >= 1");
        amp += std::fabs(h.amplitude);
    }
    if (d0_ - amp > 0.0) return; // amplitude bound settles positivity
    constexpr int n = 4096;
    for (int i = 0; i < n; ++i) {
        double theta = two_pi * i / n;
        double d = d0_;
        for (const auto& h : terms_)
            d += h.amplitude * std::cos(h.frequency * theta + h.phase);
        if (d <= 0.0)
            throw Error(ErrorKind::NonPositiveThickness,
                        "thickness is not positive near theta = " + std::to_string(theta));
    }
}

ThicknessProfile ThicknessProfile::constant(double d0) {
    return ThicknessProfile(d0, {});
}

ThicknessProfile ThicknessProfile::trig(double d0, std::vector<Harmonic> terms) {
    // Zero-amplitude terms are dropped so that constant profiles are
    // recognized structurally.
    std::vector<Harmonic> kept;
    for (const auto& h : terms)
        if (h.amplitude != 0.0) kept.push_back(h);
    return ThicknessProfile(d0, std::move(kept));
}

ThicknessProfile ThicknessProfile::cosine(double d0, double eps, int m, double phase) {
    return trig(d0, {{eps, m, phase}});
}

ThicknessSample ThicknessProfile::eval(double theta) const {
    ThicknessSample s;
    s.d = d0_;
    for (const auto& h : terms_) {
        double arg = h.frequency * theta + h.phase;
        double c = std::cos(arg), sn = std::sin(arg);
        double m = static_cast<double>(h.frequency);
        s.d += h.amplitude * c;
        s.d_prime -= h.amplitude * m * sn;
        s.d_second -= h.amplitude * m * m * c;
    }
    if (s.d <= 0.0)
        throw Error(ErrorKind::NonPositiveThickness,
                    "thickness evaluates to " + std::to_string(s.d) +
                        " at theta = " + std::to_string(theta));
    return s;
}

ThicknessProfile ThicknessProfile::scaled(double s) const {
    std::vector<Harmonic> terms = terms_;
    for (auto& h : terms) h.amplitude *= s;
    return ThicknessProfile(d0_ * s, std::move(terms));
}

DomainShape DomainShape::checked(ConvexCore c, ThicknessProfile t, int grid) {
    DomainShape shape(std::move(c), std::move(t));
    shape.admissibility = check_admissibility(shape, grid);
    return shape;
}

Point2 radial_map(const DomainShape& shape, double theta) {
    ThicknessSample s = shape.thickness.eval(theta);
    return shape.core.point(theta) + s.d * shape.core.outward_normal(theta);
}

Vec2 outer_boundary_tangent(const DomainShape& shape, double theta) {
    // dPhi/dtheta = p' + d'*nu + d*nu'. The normal derivative follows from
    // nu = (b cos, a sin)/w with w = |(b cos, a sin)|:
    //   nu' = (-b sin, a cos)/w - nu * (w'/w),  w' = (a^2-b^2) sin cos / w.
    const ConvexCore& core = shape.core;
    ThicknessSample s = shape.thickness.eval(theta);
    double a = core.semi_major(), b = core.semi_minor();
    double ct = std::cos(theta), st = std::sin(theta);
    double w = std::hypot(b * ct, a * st);
    Vec2 nu{b * ct / w, a * st / w};
    double wp = (a * a - b * b) * st * ct / w;
    Vec2 nup = Vec2{-b * st / w, a * ct / w} - (wp / w) * nu;
    Vec2 tangent = core.velocity(theta) + s.d_prime * nu + s.d * nup;
    if (tangent.norm() < 1e-12)
        throw Error(ErrorKind::DegenerateTangent,
                    "outer boundary tangent degenerates at theta = " + std::to_string(theta));
    return tangent;
}

Vec2 inward_normal_exact(const DomainShape& shape, double theta) {
    Vec2 tangent = outer_boundary_tangent(shape, theta);
    Vec2 n = tangent.rot90().normalized();
    if (dot(n, shape.core.outward_normal(theta)) > 0.0) n = -n;
    return n;
}

Vec2 inward_normal_first_order(const DomainShape& shape, double theta) {
    ThicknessSample s = shape.thickness.eval(theta);
    Vec2 nu = shape.core.outward_normal(theta);
    Vec2 T = shape.core.unit_tangent(theta);
    double g = s.d_prime / shape.core.arc_length_derivative(theta);
    double scale = -1.0 / std::sqrt(1.0 + g * g);
    return scale * (nu - g * T);
}

AdmissibilityReport check_admissibility(const DomainShape& shape, int grid) {
    AdmissibilityReport report;
    report.grid = grid;
    report.gnp_ok = true;
    bool first = true;
    for (int i = 0; i < grid; ++i) {
        double theta = two_pi * i / grid;
        ThicknessSample s = shape.thickness.eval(theta);
        double metric = 1.0 - s.d * shape.core.curvature(theta);
        if (first || s.d < report.min_thickness) report.min_thickness = s.d;
        if (first || metric < report.min_parallel_metric) report.min_parallel_metric = metric;
        first = false;
        if (report.gnp_ok) {
            try {
                Point2 x = radial_map(shape, theta);
                Vec2 n = inward_normal_exact(shape, theta);
                shape.core.ray_exit_intersection(x, n);
            } catch (const Error&) {
                report.gnp_ok = false;
            }
        }
    }
    report.parallel_metric_ok = report.min_parallel_metric > 0.0;
    return report;
}

} // namespace corecdyn
