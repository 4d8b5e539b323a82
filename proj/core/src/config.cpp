#include "corecdyn/config.hpp"

#include "corecdyn/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

namespace corecdyn {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw Error(ErrorKind::ConfigError,
                origin + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(origin, line, "key '" + key + "' expects a decimal number, got '" + value + "'");
    return out;
}

long parse_int(const std::string& origin, int line, const std::string& key,
               const std::string& value) {
    long out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(origin, line, "key '" + key + "' expects an integer, got '" + value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& origin, int line, const std::string& key,
                        const std::string& value) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(origin, line, "key '" + key + "' expects an unsigned integer, got '" + value + "'");
    return out;
}

} // namespace

ConvexCore ExperimentConfig::make_core() const {
    switch (core_kind) {
        case ConvexCore::Kind::UnitCircle: return ConvexCore::unit_circle();
        case ConvexCore::Kind::Circle: return ConvexCore::circle(core_radius);
        case ConvexCore::Kind::Ellipse: return ConvexCore::ellipse(core_a, core_b);
    }
    return ConvexCore::unit_circle();
}

ThicknessProfile ExperimentConfig::make_profile() const {
    return ThicknessProfile::trig(d0, harmonics);
}

DomainShape ExperimentConfig::make_shape() const {
    return DomainShape::checked(make_core(), make_profile(), admissibility_grid);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::IoError, "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    bool have_kind = false, have_d0 = false, have_radius = false;
    bool have_a = false, have_b = false;

    struct HarmonicDraft {
        std::optional<double> eps, phase;
        std::optional<int> m;
        int line = 0;
    };
    std::map<int, HarmonicDraft> drafts;

    static const std::regex harmonic_key(R"(^thickness\.h([0-9]+)\.(eps|m|phase)$)");

    std::istringstream lines(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(lines, raw)) {
        ++lineno;
        if (size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, lineno, "expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail(origin, lineno, "empty key or value");

        if (key == "core.kind") {
            if (value == "unit-circle") cfg.core_kind = ConvexCore::Kind::UnitCircle;
            else if (value == "circle") cfg.core_kind = ConvexCore::Kind::Circle;
            else if (value == "ellipse") cfg.core_kind = ConvexCore::Kind::Ellipse;
            else fail(origin, lineno, "core.kind must be unit-circle, circle, or ellipse");
            have_kind = true;
        } else if (key == "core.radius") {
            cfg.core_radius = parse_double(origin, lineno, key, value);
            have_radius = true;
        } else if (key == "core.a") {
            cfg.core_a = parse_double(origin, lineno, key, value);
            have_a = true;
        } else if (key == "core.b") {
            cfg.core_b = parse_double(origin, lineno, key, value);
            have_b = true;
        } else if (key == "thickness.d0") {
            cfg.d0 = parse_double(origin, lineno, key, value);
            have_d0 = true;
        } else if (std::smatch m; std::regex_match(key, m, harmonic_key)) {
            HarmonicDraft& draft = drafts[std::stoi(m[1])];
            draft.line = lineno;
            if (m[2] == "eps") draft.eps = parse_double(origin, lineno, key, value);
            else if (m[2] == "m") draft.m = static_cast<int>(parse_int(origin, lineno, key, value));
            else draft.phase = parse_double(origin, lineno, key, value);
        } else if (key == "map.variant") {
            if (value == "exact") cfg.variant = MapVariant::Exact;
            else if (value == "first-order") cfg.variant = MapVariant::FirstOrder;
            else fail(origin, lineno, "map.variant must be exact or first-order");
        } else if (key == "seed") {
            cfg.seed = parse_u64(origin, lineno, key, value);
        } else if (key == "simulate.theta0") {
            cfg.simulate_theta0 = parse_double(origin, lineno, key, value);
        } else if (key == "simulate.max_iters") {
            cfg.simulate_max_iters = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "simulate.tol") {
            cfg.simulate_tol = parse_double(origin, lineno, key, value);
        } else if (key == "classify.period_max") {
            cfg.classify_period_max = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "classify.cycle_tol") {
            cfg.classify_cycle_tol = parse_double(origin, lineno, key, value);
        } else if (key == "classify.chaos_threshold") {
            cfg.classify_chaos_threshold = parse_double(origin, lineno, key, value);
        } else if (key == "fixed_points.grid") {
            cfg.fixed_points_grid = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "admissibility.grid") {
            cfg.admissibility_grid = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "scan.m") {
            cfg.scan_m = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "scan.d0_min") {
            cfg.scan_d0_min = parse_double(origin, lineno, key, value);
        } else if (key == "scan.d0_max") {
            cfg.scan_d0_max = parse_double(origin, lineno, key, value);
        } else if (key == "scan.eps_min") {
            cfg.scan_eps_min = parse_double(origin, lineno, key, value);
        } else if (key == "scan.eps_max") {
            cfg.scan_eps_max = parse_double(origin, lineno, key, value);
        } else if (key == "scan.resolution") {
            cfg.scan_resolution = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "scan.theta0") {
            cfg.scan_theta0 = parse_double(origin, lineno, key, value);
        } else if (key == "scan.max_iters") {
            cfg.scan_max_iters = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "scan.transient") {
            cfg.scan_transient = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "scan.samples") {
            cfg.scan_samples = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "scan.jitter") {
            cfg.scan_jitter = parse_double(origin, lineno, key, value);
        } else if (key == "flow.theta0") {
            cfg.flow_theta0 = parse_double(origin, lineno, key, value);
        } else if (key == "flow.horizon") {
            cfg.flow_horizon = parse_double(origin, lineno, key, value);
        } else if (key == "flow.scales") {
            cfg.flow_scales.clear();
            std::string item;
            std::istringstream items(value);
            while (std::getline(items, item, ',')) {
                item = trim(item);
                if (item.empty()) fail(origin, lineno, "flow.scales has an empty entry");
                cfg.flow_scales.push_back(parse_double(origin, lineno, key, item));
            }
            if (cfg.flow_scales.empty()) fail(origin, lineno, "flow.scales is empty");
        } else if (key == "functionals.quadrature") {
            cfg.functionals_quadrature = static_cast<int>(parse_int(origin, lineno, key, value));
        } else {
            fail(origin, lineno, "unknown key '" + key + "'");
        }
    }

    // Assemble harmonics in index order.
    for (const auto& [idx, draft] : drafts) {
        if (!draft.eps || !draft.m)
            fail(origin, draft.line,
                 "harmonic h" + std::to_string(idx) + " needs both .eps and .m");
        Harmonic h;
        h.amplitude = *draft.eps;
        h.frequency = *draft.m;
        h.phase = draft.phase.value_or(0.0);
        if (h.frequency < 1)
            fail(origin, draft.line, "harmonic frequency must be >= 1");
        cfg.harmonics.push_back(h);
    }

    // Structural validation.
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) throw Error(ErrorKind::ConfigError, origin + ": " + what);
    };
    check(have_kind, "core.kind is required");
    check(have_d0, "thickness.d0 is required");
    check(cfg.d0 > 0.0, "thickness.d0 must be positive");
    if (cfg.core_kind == ConvexCore::Kind::Circle) {
        check(have_radius, "core.radius is required for circle cores");
        check(cfg.core_radius > 0.0, "core.radius must be positive");
    }
    if (cfg.core_kind == ConvexCore::Kind::Ellipse) {
        check(have_a && have_b, "core.a and core.b are required for ellipse cores");
        check(cfg.core_a >= cfg.core_b && cfg.core_b > 0.0,
              "ellipse semi-axes must satisfy a >= b > 0");
    }
    check(cfg.simulate_max_iters >= 1, "simulate.max_iters must be >= 1");
    check(cfg.simulate_tol > 0.0, "simulate.tol must be positive");
    check(cfg.classify_period_max >= 1, "classify.period_max must be >= 1");
    check(cfg.classify_cycle_tol > 0.0, "classify.cycle_tol must be positive");
    check(cfg.fixed_points_grid >= 16, "fixed_points.grid must be >= 16");
    check(cfg.admissibility_grid >= 16, "admissibility.grid must be >= 16");
    check(cfg.scan_resolution >= 1, "scan.resolution must be >= 1");
    check(cfg.scan_max_iters >= 1, "scan.max_iters must be >= 1");
    check(cfg.scan_samples >= 1000, "scan.samples must be >= 1000");
    check(cfg.flow_horizon > 0.0, "flow.horizon must be positive");
    for (double s : cfg.flow_scales) check(s > 0.0, "flow.scales entries must be positive");
    if (cfg.scan_d0_min && cfg.scan_d0_max)
        check(*cfg.scan_d0_min <= *cfg.scan_d0_max, "scan.d0 range is empty");
    if (cfg.scan_eps_min && cfg.scan_eps_max)
        check(*cfg.scan_eps_min <= *cfg.scan_eps_max, "scan.eps range is empty");
    check(cfg.functionals_quadrature >= 64, "functionals.quadrature must be >= 64");
    return cfg;
}

} // namespace corecdyn
