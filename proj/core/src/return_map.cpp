#include "corecdyn/return_map.hpp"

#include "corecdyn/errors.hpp"

#include <cmath>

namespace corecdyn {

StepRecord return_map_exact(const DomainShape& shape, double theta) {
    theta = wrap_angle(theta);
    StepRecord rec;
    rec.theta_in = theta;
    rec.d = shape.thickness.eval(theta).d;
    rec.x = radial_map(shape, theta);
    rec.n = inward_normal_exact(shape, theta);
    rec.cosine = dot(rec.n, shape.core.outward_normal(theta));
    RayHit hit = shape.core.ray_exit_intersection(rec.x, rec.n);
    rec.t = hit.t;
    rec.theta_out = hit.theta;
    rec.grazing = hit.grazing;
    return rec;
}

double return_map_first_order(const DomainShape& shape, double theta) {
    theta = wrap_angle(theta);
    ThicknessSample s = shape.thickness.eval(theta);
    double speed = shape.core.arc_length_derivative(theta);
    return wrap_angle(theta - 2.0 * s.d * s.d_prime / (speed * speed));
}

double return_distance_formula(const DomainShape& shape, double theta) {
    theta = wrap_angle(theta);
    double d = shape.thickness.eval(theta).d;
    double cosine = dot(inward_normal_exact(shape, theta),
                        shape.core.outward_normal(theta));
    if (std::fabs(cosine) < 1e-9)
        throw Error(ErrorKind::DegenerateCosine,
                    "|<n,nu>| below tolerance in the return-distance relation");
    return d / std::fabs(cosine);
}

double scalar_product_first_order(const DomainShape& shape, double theta) {
    theta = wrap_angle(theta);
    ThicknessSample s = shape.thickness.eval(theta);
    double g = s.d_prime / shape.core.arc_length_derivative(theta);
    return -1.0 + 0.5 * g * g + s.d * shape.core.curvature(theta);
}

StepRecord step_first_order(const DomainShape& shape, double theta) {
    theta = wrap_angle(theta);
    StepRecord rec;
    rec.theta_in = theta;
    ThicknessSample s = shape.thickness.eval(theta);
    double speed = shape.core.arc_length_derivative(theta);
    double g = s.d_prime / speed;
    rec.d = s.d;
    rec.x = radial_map(shape, theta);
    rec.n = inward_normal_first_order(shape, theta);
    rec.cosine = -1.0 / std::sqrt(1.0 + g * g);
    rec.t = s.d * std::sqrt(1.0 + g * g);
    rec.theta_out = wrap_angle(theta - 2.0 * s.d * s.d_prime / (speed * speed));
    return rec;
}

} // namespace corecdyn
