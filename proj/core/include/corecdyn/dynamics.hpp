#pragma once

#include "corecdyn/return_map.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace corecdyn {

enum class MapVariant { Exact, FirstOrder };

const char* map_variant_name(MapVariant v);

/// Apply one step of the selected map variant, returning the new angle.
double apply_map(const DomainShape& shape, double theta, MapVariant variant);

/// StepRecord for one step of the selected variant.
StepRecord apply_step(const DomainShape& shape, double theta, MapVariant variant);

struct Termination {
    enum class Kind { Converged, PeriodicCycle, MaxIterations, StepFailed };

    Kind kind = Kind::MaxIterations;
    double theta_star = 0.0;          // Converged: limit angle
    int iterations = 0;               // steps actually performed
    int period = 0;                   // PeriodicCycle: detected period
    std::vector<double> cycle;        // PeriodicCycle: one period of angles
    int failed_at = -1;               // StepFailed: step index
    std::string error_kind;           // StepFailed: ErrorKind name
    std::string error_message;        // StepFailed: what went wrong

    bool operator==(const Termination&) const = default;
};

const char* termination_kind_name(Termination::Kind kind);

/// A full trajectory of the discrete dynamics. theta_seq holds the initial
/// angle plus one entry per performed step; V_seq mirrors theta_seq with
/// V = d^2/2.
struct OrbitRecord {
    std::vector<double> theta_seq;
    std::vector<StepRecord> steps;
    std::vector<double> V_seq;
    MapVariant variant = MapVariant::Exact;
    Termination termination;

    bool operator==(const OrbitRecord&) const = default;
};

struct IterateOptions {
    int period_max = 16;      // cycle lengths checked during iteration
    double cycle_tol = 1e-8;  // recurrence tolerance for in-loop detection
};

/// Iterate the map from theta0 until the angular step drops below tol, a
/// cycle is detected, max_iters is reached, or a step fails. All
/// intermediate records are retained.
OrbitRecord iterate(const DomainShape& shape, double theta0, MapVariant variant,
                    int max_iters, double tol, const IterateOptions& opts = {});

enum class StabilityClass { Attracting, Repelling, SaddleNA, Marginal };

const char* stability_class_name(StabilityClass c);

/// Fixed point of the return map (critical point of the thickness), with
/// the gradient-descent multiplier mu = 1 - 2 d* lambda.
struct FixedPointReport {
    double theta = 0.0;  // fixed-point angle
    double d = 0.0;      // thickness there
    double lambda = 0.0; // arc-length second derivative of d
    double mu = 0.0;     // 1 - 2*d*lambda
    StabilityClass cls = StabilityClass::Marginal;
};

struct FixedPointScan {
    bool all_points_fixed = false; // constant profile: the map is the identity
    std::vector<FixedPointReport> points;
};

/// All roots of d' on [0, 2*pi), located by sign-change bracketing on a
/// uniform grid refined by bisection to 1e-12.
FixedPointScan find_fixed_points(const DomainShape& shape, int grid = 4096);

/// Central-difference derivative of the selected map at a fixed point.
double numeric_multiplier(const DomainShape& shape, double theta_star,
                          MapVariant variant, double h = 1e-5);

/// Per-step Lyapunov bookkeeping: dV against the predicted leading term
/// -2 d^2 g^2 and the residual between them.
struct LyapunovMonitor {
    std::vector<double> delta_V;
    std::vector<double> predicted;
    std::vector<double> residual;
    bool strict_decrease_away_from_critical = true; // dV < 0 whenever |g| > 1e-6
    double max_residual_over_leading = 0.0;         // max|res| / max|pred|
};

LyapunovMonitor lyapunov_monitor(const DomainShape& shape, const OrbitRecord& orbit);

/// Average of ln|F'| along the orbit after a transient, with F' estimated
/// by central differences (h = 1e-6). Deterministic given its inputs.
/// Requires n_sample >= 1000; propagates step failures with the index
/// reached.
double lyapunov_exponent(const DomainShape& shape, double theta0,
                         int n_transient, int n_sample,
                         MapVariant variant = MapVariant::Exact);

struct OrbitClassification {
    enum class Kind { FixedPoint, Periodic, Chaotic, Undetermined };

    Kind kind = Kind::Undetermined;
    int period = 0;            // Periodic only
    double tail_lyapunov = 0.0; // estimate used for the chaos decision
};

const char* classification_kind_name(OrbitClassification::Kind kind);

/// Classify a completed orbit: fixed point if the final step is below
/// cycle_tol, else the smallest period p <= period_max whose recurrence is
/// sustained over the last 4p samples, else chaotic if the tail Lyapunov
/// estimate exceeds chaos_threshold.
OrbitClassification classify_orbit(const DomainShape& shape, const OrbitRecord& orbit,
                                   int period_max = 16, double cycle_tol = 1e-6,
                                   double chaos_threshold = 0.05);

struct ScanCell {
    double d0 = 0.0;
    double eps = 0.0;
    bool defined = false; // false: profile invalid or a step failed
    OrbitClassification classification;
    double lyapunov = 0.0;
};

struct ScanResult {
    int resolution = 0; // cells per axis
    int m = 1;
    std::vector<ScanCell> cells; // row-major, d0 outer, eps inner
};

struct ScanOptions {
    int max_iters = 2000;
    double tol = 1e-10;
    int period_max = 16;
    double cycle_tol = 1e-6;
    double chaos_threshold = 0.05;
    int n_transient = 500;
    int n_sample = 1000;
    int threads = 0; // 0: hardware concurrency capped by CORECDYN_THREADS
};

/// Classify the dynamics over a (d0, eps) grid at fixed harmonic m. Cells
/// evaluate independently (optionally in parallel); assembly order is
/// deterministic.
ScanResult parameter_scan(const ConvexCore& core, int m,
                          std::pair<double, double> d0_range,
                          std::pair<double, double> eps_range, int resolution,
                          double theta0, MapVariant variant = MapVariant::Exact,
                          const ScanOptions& opts = {});

/// Discrete orbit against the gradient flow dtheta/dtau = -d'/|p'|^2, with
/// the discrete clock tau_{k+1} = tau_k + 2 d(theta_k).
struct FlowCompareReport {
    std::vector<double> tau;
    std::vector<double> theta_discrete;
    std::vector<double> theta_flow;
    std::vector<double> deviation;
    double max_deviation = 0.0;
    bool step_failed = false;
    int failed_at = -1;
};

FlowCompareReport gradient_flow_compare(const DomainShape& shape, double theta0,
                                        double horizon,
                                        MapVariant variant = MapVariant::Exact,
                                        double ode_tol = 1e-10);

/// Normalized angular histogram of an orbit; mass sums to one.
struct Histogram {
    std::vector<double> mass;
};

Histogram empirical_measure(const OrbitRecord& orbit, int bins);

} // namespace corecdyn
