#include "corecdyn/variational.hpp"

#include "corecdyn/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace corecdyn {

QuadratureResult periodic_integral(const std::function<double(double)>& f, int n) {
    auto midpoint = [&f](int points) {
        double h = two_pi / points;
        double sum = 0.0;
        for (int i = 0; i < points; ++i) sum += f((i + 0.5) * h);
        return sum * h;
    };
    QuadratureResult r;
    double coarse = midpoint(n);
    r.value = midpoint(2 * n);
    r.richardson_delta = std::fabs(r.value - coarse);
    return r;
}

ValuePair area(const DomainShape& shape, int n) {
    const ConvexCore& core = shape.core;
    ValuePair out;
    if (core.kind() == ConvexCore::Kind::Ellipse) {
        // Shoelace integral over the outer curve.
        out.exact = periodic_integral(
                        [&](double theta) {
                            Point2 x = radial_map(shape, theta);
                            Vec2 v = outer_boundary_tangent(shape, theta);
                            return 0.5 * cross(x, v);
                        },
                        n)
                        .value;
    } else {
        // Radial graph rho = r + d around a circular core.
        double r = core.semi_major();
        out.exact = periodic_integral(
                        [&](double theta) {
                            double rho = r + shape.thickness.eval(theta).d;
                            return 0.5 * rho * rho;
                        },
                        n)
                        .value;
    }
    out.expansion =
        core.area() + periodic_integral(
                          [&](double theta) {
                              ThicknessSample s = shape.thickness.eval(theta);
                              double speed = core.arc_length_derivative(theta);
                              double kappa = core.curvature(theta);
                              return (s.d + 0.5 * s.d * s.d * kappa) * speed;
                          },
                          n)
                          .value;
    return out;
}

ValuePair perimeter(const DomainShape& shape, int n) {
    const ConvexCore& core = shape.core;
    ValuePair out;
    out.exact = periodic_integral(
                    [&](double theta) { return outer_boundary_tangent(shape, theta).norm(); },
                    n)
                    .value;
    out.expansion = periodic_integral(
                        [&](double theta) {
                            ThicknessSample s = shape.thickness.eval(theta);
                            double speed = core.arc_length_derivative(theta);
                            double kappa = core.curvature(theta);
                            double g = s.d_prime / speed;
                            return (1.0 + s.d * kappa + 0.5 * g * g) * speed;
                        },
                        n)
                        .value;
    return out;
}

double cheeger_ratio(const DomainShape& shape, int n) {
    return perimeter(shape, n).exact / area(shape, n).exact;
}

FunctionalReport functionals(const DomainShape& shape, int n) {
    FunctionalReport report;
    report.area = area(shape, n);
    report.perimeter = perimeter(shape, n);
    report.cheeger = report.perimeter.exact / report.area.exact;
    return report;
}

namespace {

double shape_area(const ConvexCore& core, int m, double d0, double eps) {
    DomainShape shape(core, ThicknessProfile::cosine(d0, eps, m));
    return area(shape).exact;
}

/// Solve area(d0) = target for d0 at fixed eps. The area is exactly
/// quadratic in d0, so three evaluations recover the polynomial and the
/// positive root is closed-form.
double project_d0(const ConvexCore& core, int m, double eps, double target) {
    double base = std::fabs(eps);
    double x0 = base + 1.0, x1 = base + 2.0, x2 = base + 3.0;
    double y0 = shape_area(core, m, x0, eps);
    double y1 = shape_area(core, m, x1, eps);
    double y2 = shape_area(core, m, x2, eps);
    // Newton's divided differences for the interpolating quadratic.
    double c1 = (y1 - y0) / (x1 - x0);
    double c2 = ((y2 - y1) / (x2 - x1) - c1) / (x2 - x0);
    // y(x) = y0 + c1 (x-x0) + c2 (x-x0)(x-x1)
    double A = c2;
    double B = c1 - c2 * (x0 + x1);
    double C = y0 - c1 * x0 + c2 * x0 * x1 - target;
    double disc = B * B - 4.0 * A * C;
    if (!(A > 0.0) || disc < 0.0)
        throw Error(ErrorKind::ConstraintInfeasible,
                    "no thickness base attains the requested area");
    double root = (-B + std::sqrt(disc)) / (2.0 * A);
    if (!(root > std::fabs(eps)))
        throw Error(ErrorKind::ConstraintInfeasible,
                    "area constraint forces a non-positive thickness");
    return root;
}

} // namespace

DescentResult coefficient_descent(const ConvexCore& core, int m, double volume_target,
                                  const ThicknessProfile& init, int steps, double rate) {
    if (steps < 0) throw std::invalid_argument("steps must be >= 0");
    if (init.terms().size() > 1)
        throw std::invalid_argument("coefficient descent expects at most one harmonic");
    if (volume_target <= core.area())
        throw Error(ErrorKind::ConstraintInfeasible,
                    "target area does not exceed the core area");

    double eps = init.is_constant() ? 0.0 : init.terms()[0].amplitude;

    auto ratio_at = [&](double e) {
        double d0 = project_d0(core, m, e, volume_target);
        DomainShape shape(core, ThicknessProfile::cosine(d0, e, m));
        return cheeger_ratio(shape);
    };

    DescentResult result{{}, init};
    double d0 = project_d0(core, m, eps, volume_target);
    result.trajectory.push_back({d0, eps, ratio_at(eps)});

    for (int k = 0; k < steps; ++k) {
        double h = 1e-6 * std::max(1.0, std::fabs(eps));
        double grad = (ratio_at(eps + h) - ratio_at(eps - h)) / (2.0 * h);
        eps -= rate * grad;
        // Below this level the coefficient is gradient noise from the
        // finite-difference quotient; settle onto the constant profile.
        if (std::fabs(eps) < 1e-10) eps = 0.0;
        d0 = project_d0(core, m, eps, volume_target);
        result.trajectory.push_back({d0, eps, ratio_at(eps)});
    }

    result.final_profile = ThicknessProfile::cosine(d0, eps, m);
    return result;
}

} // namespace corecdyn
