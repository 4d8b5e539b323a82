#pragma once

#include "corecdyn/geometry.hpp"

#include <optional>
#include <vector>

namespace corecdyn {

/// One trigonometric term amplitude*cos(frequency*theta + phase).
struct Harmonic {
    double amplitude = 0.0;
    int frequency = 1;
    double phase = 0.0;
};

/// Value of the thickness function and its first two theta-derivatives.
struct ThicknessSample {
    double d = 0.0;
    double d_prime = 0.0;
    double d_second = 0.0;
};

/// Thickness profile d(theta) = d0 + sum_j eps_j cos(m_j theta + phi_j),
/// evaluated in closed form together with its derivatives. Positivity is
/// checked at construction: the amplitude bound d0 - sum|eps_j| when it is
/// positive, otherwise a 4096-point sample sweep.
class ThicknessProfile {
public:
    static ThicknessProfile constant(double d0);
    static ThicknessProfile trig(double d0, std::vector<Harmonic> terms);

    /// Single-harmonic convenience: d0 + eps*cos(m*theta).
    static ThicknessProfile cosine(double d0, double eps, int m, double phase = 0.0);

    double base() const { return d0_; }
    const std::vector<Harmonic>& terms() const { return terms_; }
    bool is_constant() const { return terms_.empty(); }

    /// Closed-form d, d', d''; throws Error(NonPositiveThickness) if the
    /// value is not strictly positive.
    ThicknessSample eval(double theta) const;

    /// Profile scaled by s (both base and amplitudes).
    ThicknessProfile scaled(double s) const;

private:
    ThicknessProfile(double d0, std::vector<Harmonic> terms);

    double d0_ = 0.0;
    std::vector<Harmonic> terms_;
};

/// Admissibility diagnostics for a (core, thickness) pair. Advisory only:
/// shapes that fail these checks remain fully simulatable.
struct AdmissibilityReport {
    double min_thickness = 0.0;       // min over the grid of d(theta)
    double min_parallel_metric = 0.0; // min over the grid of 1 - d*kappa
    bool parallel_metric_ok = false;  // min_parallel_metric > 0
    bool gnp_ok = false;              // every inward normal ray hits the core
    int grid = 0;
};

/// A domain around the core, described by its thickness function.
struct DomainShape {
    ConvexCore core;
    ThicknessProfile thickness;
    std::optional<AdmissibilityReport> admissibility;

    DomainShape(ConvexCore c, ThicknessProfile t)
        : core(std::move(c)), thickness(std::move(t)) {}

    /// Shape with admissibility evaluated and attached.
    static DomainShape checked(ConvexCore c, ThicknessProfile t, int grid = 2048);
};

/// Outer boundary point Phi(theta) = p(theta) + d(theta)*nu(theta).
Point2 radial_map(const DomainShape& shape, double theta);

/// dPhi/dtheta, non-normalized. Throws Error(DegenerateTangent) when the
/// norm falls below 1e-12 (the radial map stops being an immersion).
Vec2 outer_boundary_tangent(const DomainShape& shape, double theta);

/// Exact inward unit normal of the outer boundary, obtained by rotating the
/// tangent and orienting so that <n, nu(theta)> < 0.
Vec2 inward_normal_exact(const DomainShape& shape, double theta);

/// First-order inward normal -(nu - g*T)/sqrt(1+g^2) with g the arc-length
/// gradient of d. Unit norm by construction; exact when d' == 0.
Vec2 inward_normal_first_order(const DomainShape& shape, double theta);

/// Grid diagnostics; never throws, never blocks construction.
AdmissibilityReport check_admissibility(const DomainShape& shape, int grid = 2048);

} // namespace corecdyn
