#pragma once

#include "corecdyn/thickness.hpp"

#include <functional>
#include <vector>

namespace corecdyn {

/// Composite midpoint integral of a 2*pi-periodic integrand, with one
/// Richardson halving step as an error estimate. Midpoint quadrature is
/// spectrally accurate for smooth periodic integrands; the check guards
/// non-smooth inputs.
struct QuadratureResult {
    double value = 0.0;
    double richardson_delta = 0.0; // |I(2n) - I(n)|
};

QuadratureResult periodic_integral(const std::function<double(double)>& f, int n = 4096);

struct ValuePair {
    double exact = 0.0;
    double expansion = 0.0;
    double residual() const { return exact - expansion; }
};

/// Enclosed area: exactly via the boundary integral of the outer curve, and
/// via the thickness expansion |C| + int d ds + 1/2 int d^2 kappa ds.
ValuePair area(const DomainShape& shape, int quadrature_points = 4096);

/// Outer boundary length: exactly as int |dPhi/dtheta| dtheta, and via the
/// expansion |dC| + int d kappa ds + 1/2 int g^2 ds.
ValuePair perimeter(const DomainShape& shape, int quadrature_points = 4096);

/// Perimeter over area (exact values).
double cheeger_ratio(const DomainShape& shape, int quadrature_points = 4096);

struct FunctionalReport {
    ValuePair area;
    ValuePair perimeter;
    double cheeger = 0.0;
};

FunctionalReport functionals(const DomainShape& shape, int quadrature_points = 4096);

struct DescentState {
    double d0 = 0.0;
    double eps = 0.0;
    double cheeger = 0.0;
};

struct DescentResult {
    std::vector<DescentState> trajectory; // state after every step, incl. start
    ThicknessProfile final_profile;
};

/// Projected gradient descent for the Cheeger ratio over the (d0, eps)
/// coefficient space of a single harmonic of frequency m. The area
/// constraint is enforced after every step by re-solving d0 from the
/// quadratic area identity. Throws Error(ConstraintInfeasible) when no
/// admissible d0 attains the target area.
DescentResult coefficient_descent(const ConvexCore& core, int m, double volume_target,
                                  const ThicknessProfile& init, int steps, double rate);

} // namespace corecdyn
