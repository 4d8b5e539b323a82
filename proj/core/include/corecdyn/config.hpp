#pragma once

#include "corecdyn/dynamics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace corecdyn {

/// Experiment configuration, parsed from a flat key = value file with '#'
/// comments and dotted section keys. Unknown keys are rejected; numeric
/// fields are decimal text.
struct ExperimentConfig {
    // core.*
    ConvexCore::Kind core_kind = ConvexCore::Kind::UnitCircle;
    double core_radius = 1.0; // circle
    double core_a = 1.0;      // ellipse
    double core_b = 1.0;

    // thickness.*
    double d0 = 0.0;
    std::vector<Harmonic> harmonics;

    // map.variant, seed
    MapVariant variant = MapVariant::Exact;
    std::uint64_t seed = 42;

    // simulate.*
    std::optional<double> simulate_theta0;
    int simulate_max_iters = 1000;
    double simulate_tol = 1e-10;

    // classify.*
    int classify_period_max = 16;
    double classify_cycle_tol = 1e-6;
    double classify_chaos_threshold = 0.05;

    // fixed_points.*, admissibility.*
    int fixed_points_grid = 4096;
    int admissibility_grid = 2048;

    // scan.*
    std::optional<int> scan_m;
    std::optional<double> scan_d0_min, scan_d0_max;
    std::optional<double> scan_eps_min, scan_eps_max;
    int scan_resolution = 8;
    double scan_theta0 = 1.0;
    int scan_max_iters = 2000;
    int scan_transient = 500;
    int scan_samples = 1000;
    double scan_jitter = 0.0;

    // flow.*
    std::optional<double> flow_theta0;
    double flow_horizon = 5.0;
    std::vector<double> flow_scales{1.0};

    // functionals.*
    int functionals_quadrature = 4096;

    ConvexCore make_core() const;
    ThicknessProfile make_profile() const;
    DomainShape make_shape() const; // admissibility attached
};

/// Parse a config file from disk. Throws Error(ConfigError) on unknown keys,
/// malformed values, or violated constraints; Error(IoError) when the file
/// cannot be read.
ExperimentConfig load_config(const std::string& path);

/// Parse config text (same rules, no file access).
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

} // namespace corecdyn
