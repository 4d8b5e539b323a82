#pragma once

#include "corecdyn/thickness.hpp"

namespace corecdyn {

/// One application of the boundary-to-boundary round trip: out along the
/// core normal to the outer boundary, back along the outer boundary's
/// inward normal to the core.
struct StepRecord {
    double theta_in = 0.0;
    double theta_out = 0.0;
    double d = 0.0;       // thickness at theta_in
    double t = 0.0;       // return distance along the inward normal
    Point2 x;             // outer boundary point Phi(theta_in)
    Vec2 n;               // inward normal used for the return ray
    double cosine = 0.0;  // <n, nu(theta_in)>, in [-1, 0) for admissible steps
    bool grazing = false; // return ray hit the core at a clamped tangency

    bool operator==(const StepRecord&) const = default;
};

/// Exact round trip via ray intersection. Throws Error(NoIntersection) when
/// the inward normal ray misses the core and Error(DegenerateTangent) when
/// the outer boundary is not an immersion at theta.
StepRecord return_map_exact(const DomainShape& shape, double theta);

/// Closed-form first-order update theta - 2*d*d'/|p'|^2 (the parameter
/// version of c - 2*d*grad d). No ray intersection is performed.
double return_map_first_order(const DomainShape& shape, double theta);

/// Return distance predicted by the normal-projection relation
/// t = d/|<n, nu>| with the exact inward normal. Throws
/// Error(DegenerateCosine) when |<n, nu>| < 1e-9.
double return_distance_formula(const DomainShape& shape, double theta);

/// First-order expansion of <n, nu>: -1 + g^2/2 + d*kappa, with g the
/// arc-length gradient of d. A formula object kept for comparison against
/// the exact cosine; it is not used by the exact map.
double scalar_product_first_order(const DomainShape& shape, double theta);

/// StepRecord for the first-order update, with t and cosine filled from the
/// first-order normal so that orbit records are uniform across variants.
StepRecord step_first_order(const DomainShape& shape, double theta);

} // namespace corecdyn
