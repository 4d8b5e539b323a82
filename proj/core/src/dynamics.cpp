#include "corecdyn/dynamics.hpp"

#include "corecdyn/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace corecdyn {

const char* map_variant_name(MapVariant v) {
    return v == MapVariant::Exact ? "exact" : "first-order";
}

const char* termination_kind_name(Termination::Kind kind) {
    switch (kind) {
        case Termination::Kind::Converged: return "Converged";
        case Termination::Kind::PeriodicCycle: return "PeriodicCycle";
        case Termination::Kind::MaxIterations: return "MaxIterations";
        case Termination::Kind::StepFailed: return "StepFailed";
    }
    return "Unknown";
}

const char* stability_class_name(StabilityClass c) {
    switch (c) {
        case StabilityClass::Attracting: return "Attracting";
        case StabilityClass::Repelling: return "Repelling";
        case StabilityClass::SaddleNA: return "Saddle-NA";
        case StabilityClass::Marginal: return "Marginal";
    }
    return "Unknown";
}

const char* classification_kind_name(OrbitClassification::Kind kind) {
    switch (kind) {
        case OrbitClassification::Kind::FixedPoint: return "FixedPoint";
        case OrbitClassification::Kind::Periodic: return "Periodic";
        case OrbitClassification::Kind::Chaotic: return "Chaotic";
        case OrbitClassification::Kind::Undetermined: return "Undetermined";
    }
    return "Unknown";
}

double apply_map(const DomainShape& shape, double theta, MapVariant variant) {
    if (variant == MapVariant::Exact) return return_map_exact(shape, theta).theta_out;
    return return_map_first_order(shape, theta);
}

StepRecord apply_step(const DomainShape& shape, double theta, MapVariant variant) {
    if (variant == MapVariant::Exact) return return_map_exact(shape, theta);
    return step_first_order(shape, theta);
}

namespace {

/// Smallest period p in [2, period_max] whose recurrence theta[i] ~
/// theta[i+p] holds over the last 4p samples of the sequence.
int detect_cycle(const std::vector<double>& seq, int period_max, double tol) {
    int n = static_cast<int>(seq.size());
    for (int p = 2; p <= period_max; ++p) {
        int window = 4 * p;
        if (n < window + p) continue;
        bool sustained = true;
        for (int i = n - window; i < n - p && sustained; ++i)
            sustained = angular_distance(seq[i], seq[i + p]) < tol;
        // Reject multiples of a shorter recurrence that already converged
        // pointwise (a fixed point recurs at every p); the p = 1 case is the
        // convergence test, handled by the caller.
        if (sustained && angular_distance(seq[n - 1], seq[n - 2]) >= tol) return p;
    }
    return 0;
}

} // namespace

OrbitRecord iterate(const DomainShape& shape, double theta0, MapVariant variant,
                    int max_iters, double tol, const IterateOptions& opts) {
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

    OrbitRecord orbit;
    orbit.variant = variant;
    double theta = wrap_angle(theta0);
    orbit.theta_seq.push_back(theta);
    orbit.V_seq.push_back(0.5 * shape.thickness.eval(theta).d * shape.thickness.eval(theta).d);

    for (int k = 0; k < max_iters; ++k) {
        StepRecord rec;
        try {
            rec = apply_step(shape, theta, variant);
        } catch (const Error& e) {
            orbit.termination.kind = Termination::Kind::StepFailed;
            orbit.termination.failed_at = k;
            orbit.termination.iterations = k;
            orbit.termination.error_kind = e.kind_name();
            orbit.termination.error_message = e.what();
            return orbit;
        }
        orbit.steps.push_back(rec);
        theta = rec.theta_out;
        orbit.theta_seq.push_back(theta);
        double d = shape.thickness.eval(theta).d;
        orbit.V_seq.push_back(0.5 * d * d);

        if (angular_distance(rec.theta_out, rec.theta_in) < tol) {
            orbit.termination.kind = Termination::Kind::Converged;
            orbit.termination.theta_star = theta;
            orbit.termination.iterations = k + 1;
            return orbit;
        }
        if (int p = detect_cycle(orbit.theta_seq, opts.period_max, opts.cycle_tol)) {
            orbit.termination.kind = Termination::Kind::PeriodicCycle;
            orbit.termination.period = p;
            orbit.termination.iterations = k + 1;
            orbit.termination.cycle.assign(orbit.theta_seq.end() - p, orbit.theta_seq.end());
            return orbit;
        }
    }
    orbit.termination.kind = Termination::Kind::MaxIterations;
    orbit.termination.iterations = max_iters;
    return orbit;
}

FixedPointScan find_fixed_points(const DomainShape& shape, int grid) {
    FixedPointScan scan;
    if (shape.thickness.is_constant()) {
        scan.all_points_fixed = true;
        return scan;
    }

    auto dprime = [&](double theta) { return shape.thickness.eval(theta).d_prime; };

    std::vector<double> roots;
    double prev_theta = 0.0, prev_f = dprime(0.0);
    for (int i = 1; i <= grid; ++i) {
        double theta = two_pi * i / grid;
        double f = dprime(theta);
        if (prev_f == 0.0) {
            roots.push_back(wrap_angle(prev_theta));
        } else if (f != 0.0 && std::signbit(f) != std::signbit(prev_f)) {
            double lo = prev_theta, hi = theta, flo = prev_f;
            while (hi - lo > 1e-13) {
                double mid = 0.5 * (lo + hi);
                double fm = dprime(mid);
                if (fm == 0.0) { lo = hi = mid; break; }
                if (std::signbit(fm) == std::signbit(flo)) { lo = mid; flo = fm; }
                else hi = mid;
            }
            roots.push_back(wrap_angle(0.5 * (lo + hi)));
        }
        prev_theta = theta;
        prev_f = f;
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        if (!unique.empty() && angular_distance(unique.back(), r) < 1e-9) continue;
        if (!unique.empty() && angular_distance(unique.front(), r) < 1e-9) continue;
        unique.push_back(r);
    }

    for (double theta : unique) {
        ThicknessSample s = shape.thickness.eval(theta);
        double speed = shape.core.arc_length_derivative(theta);
        FixedPointReport rep;
        rep.theta = theta;
        rep.d = s.d;
        rep.lambda = s.d_second / (speed * speed);
        rep.mu = 1.0 - 2.0 * rep.d * rep.lambda;
        if (std::fabs(std::fabs(rep.mu) - 1.0) <= 1e-9)
            rep.cls = StabilityClass::Marginal;
        else if (std::fabs(rep.mu) < 1.0)
            rep.cls = StabilityClass::Attracting;
        else
            rep.cls = StabilityClass::Repelling;
        scan.points.push_back(rep);
    }
    return scan;
}

double numeric_multiplier(const DomainShape& shape, double theta_star,
                          MapVariant variant, double h) {
    double fp = apply_map(shape, theta_star + h, variant);
    double fm = apply_map(shape, theta_star - h, variant);
    return angular_difference(fp, fm) / (2.0 * h);
}

LyapunovMonitor lyapunov_monitor(const DomainShape& shape, const OrbitRecord& orbit) {
    LyapunovMonitor mon;
    double max_pred = 0.0, max_res = 0.0;
    for (size_t k = 0; k < orbit.steps.size(); ++k) {
        double theta = orbit.steps[k].theta_in;
        ThicknessSample s = shape.thickness.eval(theta);
        double g = s.d_prime / shape.core.arc_length_derivative(theta);
        double dV = orbit.V_seq[k + 1] - orbit.V_seq[k];
        double pred = -2.0 * s.d * s.d * g * g;
        double res = dV - pred;
        mon.delta_V.push_back(dV);
        mon.predicted.push_back(pred);
        mon.residual.push_back(res);
        if (std::fabs(g) > 1e-6) {
            if (dV >= 0.0) mon.strict_decrease_away_from_critical = false;
            max_pred = std::max(max_pred, std::fabs(pred));
            max_res = std::max(max_res, std::fabs(res));
        }
    }
    mon.max_residual_over_leading = max_pred > 0.0 ? max_res / max_pred : 0.0;
    return mon;
}

double lyapunov_exponent(const DomainShape& shape, double theta0,
                         int n_transient, int n_sample, MapVariant variant) {
    if (n_sample < 1000)
        throw std::invalid_argument("lyapunov_exponent requires n_sample >= 1000");
    constexpr double h = 1e-6;
    double theta = wrap_angle(theta0);
    int reached = 0;
    try {
        for (; reached < n_transient; ++reached)
            theta = apply_map(shape, theta, variant);
        double sum = 0.0;
        for (int k = 0; k < n_sample; ++k, ++reached) {
            double fp = apply_map(shape, theta + h, variant);
            double fm = apply_map(shape, theta - h, variant);
            double deriv = angular_difference(fp, fm) / (2.0 * h);
            sum += std::log(std::fabs(deriv));
            theta = apply_map(shape, theta, variant);
        }
        return sum / n_sample;
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(e.what()) + " (orbit index " +
                                  std::to_string(reached) + ")");
    }
}

OrbitClassification classify_orbit(const DomainShape& shape, const OrbitRecord& orbit,
                                   int period_max, double cycle_tol,
                                   double chaos_threshold) {
    OrbitClassification cls;
    if (orbit.termination.kind == Termination::Kind::StepFailed || orbit.steps.empty())
        return cls;

    const auto& seq = orbit.theta_seq;
    int n = static_cast<int>(seq.size());
    if (orbit.termination.kind == Termination::Kind::Converged ||
        angular_distance(seq[n - 1], seq[n - 2]) < cycle_tol) {
        cls.kind = OrbitClassification::Kind::FixedPoint;
        return cls;
    }
    if (orbit.termination.kind == Termination::Kind::PeriodicCycle) {
        cls.kind = OrbitClassification::Kind::Periodic;
        cls.period = orbit.termination.period;
        return cls;
    }
    if (int p = detect_cycle(seq, period_max, cycle_tol)) {
        cls.kind = OrbitClassification::Kind::Periodic;
        cls.period = p;
        return cls;
    }

    // Aperiodic tail: decide by the stretching rate along the recorded tail.
    int tail = std::min(n - 1, 1000);
    constexpr double h = 1e-6;
    double sum = 0.0;
    int counted = 0;
    try {
        for (int i = n - tail; i < n; ++i) {
            double fp = apply_map(shape, seq[i] + h, orbit.variant);
            double fm = apply_map(shape, seq[i] - h, orbit.variant);
            sum += std::log(std::fabs(angular_difference(fp, fm) / (2.0 * h)));
            ++counted;
        }
    } catch (const Error&) {
        return cls; // Undetermined
    }
    cls.tail_lyapunov = counted > 0 ? sum / counted : 0.0;
    if (cls.tail_lyapunov > chaos_threshold)
        cls.kind = OrbitClassification::Kind::Chaotic;
    return cls;
}

namespace {

int scan_thread_count(int requested, size_t cells) {
    if (requested > 0) return std::min<size_t>(requested, cells);
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CORECDYN_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end && *end == '\0' && cap > 0) hw = std::min<unsigned>(hw, cap);
    }
    return static_cast<int>(std::min<size_t>(hw, cells));
}

} // namespace

ScanResult parameter_scan(const ConvexCore& core, int m,
                          std::pair<double, double> d0_range,
                          std::pair<double, double> eps_range, int resolution,
                          double theta0, MapVariant variant, const ScanOptions& opts) {
    if (resolution < 1) throw std::invalid_argument("scan resolution must be >= 1");
    ScanResult result;
    result.resolution = resolution;
    result.m = m;
    result.cells.resize(static_cast<size_t>(resolution) * resolution);

    auto axis = [resolution](std::pair<double, double> range, int i) {
        if (resolution == 1) return range.first;
        return range.first + (range.second - range.first) * i / (resolution - 1);
    };

    auto run_cell = [&](size_t idx) {
        ScanCell& cell = result.cells[idx];
        int i = static_cast<int>(idx) / resolution;
        int j = static_cast<int>(idx) % resolution;
        cell.d0 = axis(d0_range, i);
        cell.eps = axis(eps_range, j);
        try {
            DomainShape shape(core, ThicknessProfile::cosine(cell.d0, cell.eps, m));
            OrbitRecord orbit =
                iterate(shape, theta0, variant, opts.max_iters, opts.tol,
                        {opts.period_max, opts.cycle_tol});
            if (orbit.termination.kind == Termination::Kind::StepFailed) return;
            cell.classification = classify_orbit(shape, orbit, opts.period_max,
                                                 opts.cycle_tol, opts.chaos_threshold);
            cell.lyapunov = lyapunov_exponent(shape, theta0, opts.n_transient,
                                              opts.n_sample, variant);
            cell.defined = true;
        } catch (const Error&) {
            cell.defined = false;
        }
    };

    size_t total = result.cells.size();
    int threads = scan_thread_count(opts.threads, total);
    if (threads <= 1) {
        for (size_t idx = 0; idx < total; ++idx) run_cell(idx);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
                    run_cell(idx);
            });
        for (auto& th : pool) th.join();
    }
    return result;
}

namespace {

/// Dormand-Prince 5(4) with step-size control, specialized to a scalar
/// autonomous ODE. Integrates from tau0 to tau1 and returns y(tau1).
template <typename Rhs>
double dopri5(Rhs rhs, double y, double tau0, double tau1, double tol) {
    double span = tau1 - tau0;
    if (span <= 0.0) return y;
    double h = span / 8.0;
    double tau = tau0;
    double k1 = rhs(y);
    int guard = 0;
    while (tau < tau1 && ++guard < 1000000) {
        if (tau + h > tau1) h = tau1 - tau;
        double k2 = rhs(y + h * (1.0 / 5) * k1);
        double k3 = rhs(y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
        double k4 = rhs(y + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
        double k5 = rhs(y + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                                 64448.0 / 6561 * k3 - 212.0 / 729 * k4));
        double k6 = rhs(y + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 +
                                 46732.0 / 5247 * k3 + 49.0 / 176 * k4 -
                                 5103.0 / 18656 * k5));
        double y5 = y + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 + 125.0 / 192 * k4 -
                             2187.0 / 6784 * k5 + 11.0 / 84 * k6);
        double k7 = rhs(y5);
        double y4 = y + h * (5179.0 / 57600 * k1 + 7571.0 / 16695 * k3 +
                             393.0 / 640 * k4 - 92097.0 / 339200 * k5 +
                             187.0 / 2100 * k6 + 1.0 / 40 * k7);
        double err = std::fabs(y5 - y4);
        double scale = tol * (1.0 + std::fabs(y));
        if (err <= scale) {
            tau += h;
            y = y5;
            k1 = k7; // first-same-as-last
        }
        double factor = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return y;
}

} // namespace

FlowCompareReport gradient_flow_compare(const DomainShape& shape, double theta0,
                                        double horizon, MapVariant variant,
                                        double ode_tol) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    FlowCompareReport report;

    auto rhs = [&shape](double theta) {
        ThicknessSample s = shape.thickness.eval(theta);
        double speed = shape.core.arc_length_derivative(theta);
        return -s.d_prime / (speed * speed);
    };

    double theta_disc = wrap_angle(theta0);
    double theta_flow = theta_disc; // integrated unwrapped
    double tau = 0.0;

    report.tau.push_back(tau);
    report.theta_discrete.push_back(theta_disc);
    report.theta_flow.push_back(wrap_angle(theta_flow));
    report.deviation.push_back(0.0);

    constexpr int max_steps = 1000000;
    for (int k = 0; k < max_steps && tau < horizon; ++k) {
        double d = shape.thickness.eval(theta_disc).d;
        double tau_next = tau + 2.0 * d;
        try {
            theta_disc = apply_map(shape, theta_disc, variant);
        } catch (const Error&) {
            report.step_failed = true;
            report.failed_at = k;
            break;
        }
        theta_flow = dopri5(rhs, theta_flow, tau, tau_next, ode_tol);
        tau = tau_next;
        double dev = angular_distance(theta_disc, theta_flow);
        report.tau.push_back(tau);
        report.theta_discrete.push_back(theta_disc);
        report.theta_flow.push_back(wrap_angle(theta_flow));
        report.deviation.push_back(dev);
        report.max_deviation = std::max(report.max_deviation, dev);
    }
    return report;
}

Histogram empirical_measure(const OrbitRecord& orbit, int bins) {
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");
    if (orbit.theta_seq.size() < static_cast<size_t>(bins))
        throw std::invalid_argument("orbit shorter than the number of bins");
    std::vector<long> counts(bins, 0);
    for (double theta : orbit.theta_seq) {
        int b = static_cast<int>(wrap_angle(theta) / two_pi * bins);
        if (b >= bins) b = bins - 1;
        ++counts[b];
    }
    Histogram hist;
    hist.mass.resize(bins);
    double total = static_cast<double>(orbit.theta_seq.size());
    for (int b = 0; b < bins; ++b) hist.mass[b] = counts[b] / total;
    return hist;
}

} // namespace corecdyn
