#include "corecdyn/output.hpp"

#include "corecdyn/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace corecdyn {

std::string format_number(double value, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(ErrorKind::IoError, "failed while writing '" + path + "'");
}

void to_json(nlohmann::json& j, const StepRecord& rec) {
    j = nlohmann::json{{"theta_in", rec.theta_in}, {"theta_out", rec.theta_out},
                       {"d", rec.d},               {"t", rec.t},
                       {"x", {rec.x.x, rec.x.y}},  {"n", {rec.n.x, rec.n.y}},
                       {"cosine", rec.cosine},     {"grazing", rec.grazing}};
}

void from_json(const nlohmann::json& j, StepRecord& rec) {
    rec.theta_in = j.at("theta_in");
    rec.theta_out = j.at("theta_out");
    rec.d = j.at("d");
    rec.t = j.at("t");
    rec.x = {j.at("x")[0], j.at("x")[1]};
    rec.n = {j.at("n")[0], j.at("n")[1]};
    rec.cosine = j.at("cosine");
    rec.grazing = j.at("grazing");
}

void to_json(nlohmann::json& j, const Termination& term) {
    j = nlohmann::json{{"kind", termination_kind_name(term.kind)},
                       {"iterations", term.iterations}};
    switch (term.kind) {
        case Termination::Kind::Converged:
            j["theta_star"] = term.theta_star;
            break;
        case Termination::Kind::PeriodicCycle:
            j["period"] = term.period;
            j["cycle"] = term.cycle;
            break;
        case Termination::Kind::StepFailed:
            j["failed_at"] = term.failed_at;
            j["error_kind"] = term.error_kind;
            j["error_message"] = term.error_message;
            break;
        case Termination::Kind::MaxIterations:
            break;
    }
}

void from_json(const nlohmann::json& j, Termination& term) {
    term = Termination{};
    std::string kind = j.at("kind");
    term.iterations = j.at("iterations");
    if (kind == "Converged") {
        term.kind = Termination::Kind::Converged;
        term.theta_star = j.at("theta_star");
    } else if (kind == "PeriodicCycle") {
        term.kind = Termination::Kind::PeriodicCycle;
        term.period = j.at("period");
        term.cycle = j.at("cycle").get<std::vector<double>>();
    } else if (kind == "StepFailed") {
        term.kind = Termination::Kind::StepFailed;
        term.failed_at = j.at("failed_at");
        term.error_kind = j.at("error_kind");
        term.error_message = j.at("error_message");
    } else {
        term.kind = Termination::Kind::MaxIterations;
    }
}

void to_json(nlohmann::json& j, const OrbitRecord& orbit) {
    j = nlohmann::json{{"variant", map_variant_name(orbit.variant)},
                       {"theta_seq", orbit.theta_seq},
                       {"V_seq", orbit.V_seq},
                       {"steps", orbit.steps},
                       {"termination", orbit.termination}};
}

void from_json(const nlohmann::json& j, OrbitRecord& orbit) {
    orbit = OrbitRecord{};
    orbit.variant = j.at("variant") == "exact" ? MapVariant::Exact : MapVariant::FirstOrder;
    orbit.theta_seq = j.at("theta_seq").get<std::vector<double>>();
    orbit.V_seq = j.at("V_seq").get<std::vector<double>>();
    orbit.steps = j.at("steps").get<std::vector<StepRecord>>();
    orbit.termination = j.at("termination").get<Termination>();
}

void to_json(nlohmann::json& j, const FunctionalReport& report) {
    j = nlohmann::json{
        {"area",
         {{"exact", report.area.exact},
          {"expansion", report.area.expansion},
          {"residual", report.area.residual()}}},
        {"perimeter",
         {{"exact", report.perimeter.exact},
          {"expansion", report.perimeter.expansion},
          {"residual", report.perimeter.residual()}}},
        {"cheeger_ratio", report.cheeger}};
}

void from_json(const nlohmann::json& j, FunctionalReport& report) {
    report.area.exact = j.at("area").at("exact");
    report.area.expansion = j.at("area").at("expansion");
    report.perimeter.exact = j.at("perimeter").at("exact");
    report.perimeter.expansion = j.at("perimeter").at("expansion");
    report.cheeger = j.at("cheeger_ratio");
}

void to_json(nlohmann::json& j, const AdmissibilityReport& report) {
    j = nlohmann::json{{"min_thickness", report.min_thickness},
                       {"min_parallel_metric", report.min_parallel_metric},
                       {"parallel_metric_ok", report.parallel_metric_ok},
                       {"gnp_ok", report.gnp_ok},
                       {"grid", report.grid}};
}

void to_json(nlohmann::json& j, const OrbitClassification& cls) {
    j = nlohmann::json{{"kind", classification_kind_name(cls.kind)}};
    if (cls.kind == OrbitClassification::Kind::Periodic) j["period"] = cls.period;
    if (cls.kind == OrbitClassification::Kind::Chaotic ||
        cls.kind == OrbitClassification::Kind::Undetermined)
        j["tail_lyapunov"] = cls.tail_lyapunov;
}

std::string orbit_csv(const OrbitRecord& orbit) {
    std::ostringstream out;
    out << "k,theta,d,t,V,dV,cosine\n";
    for (size_t k = 0; k < orbit.steps.size(); ++k) {
        const StepRecord& s = orbit.steps[k];
        double dV = orbit.V_seq[k + 1] - orbit.V_seq[k];
        out << k << ',' << format_number(s.theta_in) << ',' << format_number(s.d) << ','
            << format_number(s.t) << ',' << format_number(orbit.V_seq[k]) << ','
            << format_number(dV) << ',' << format_number(s.cosine) << '\n';
    }
    return out.str();
}

std::string fixed_points_csv(const FixedPointScan& scan) {
    std::ostringstream out;
    out << "theta,d,lambda,mu,class\n";
    if (scan.all_points_fixed) {
        out << "all,*,0,1,Marginal\n";
        return out.str();
    }
    for (const FixedPointReport& p : scan.points)
        out << format_number(p.theta) << ',' << format_number(p.d) << ','
            << format_number(p.lambda) << ',' << format_number(p.mu) << ','
            << stability_class_name(p.cls) << '\n';
    return out.str();
}

namespace {

std::string scan_class_label(const ScanCell& cell) {
    if (!cell.defined) return "Undefined";
    switch (cell.classification.kind) {
        case OrbitClassification::Kind::FixedPoint: return "FixedPoint";
        case OrbitClassification::Kind::Periodic:
            return "Periodic(" + std::to_string(cell.classification.period) + ")";
        case OrbitClassification::Kind::Chaotic: return "Chaotic";
        case OrbitClassification::Kind::Undetermined: return "Undetermined";
    }
    return "Undefined";
}

const char* scan_class_color(const ScanCell& cell) {
    if (!cell.defined) return "#9e9e9e";
    switch (cell.classification.kind) {
        case OrbitClassification::Kind::FixedPoint: return "#4472c4";
        case OrbitClassification::Kind::Periodic: return "#70ad47";
        case OrbitClassification::Kind::Chaotic: return "#c00000";
        case OrbitClassification::Kind::Undetermined: return "#ffc000";
    }
    return "#9e9e9e";
}

std::string svg_coord(double v) { return format_number(v, 8); }

} // namespace

std::string scan_csv(const ScanResult& result) {
    std::ostringstream out;
    out << "d0,eps,class,lyapunov\n";
    for (const ScanCell& cell : result.cells)
        out << format_number(cell.d0) << ',' << format_number(cell.eps) << ','
            << scan_class_label(cell) << ','
            << format_number(cell.defined ? cell.lyapunov : 0.0) << '\n';
    return out.str();
}

std::string flow_csv(const FlowCompareReport& report) {
    std::ostringstream out;
    out << "tau,theta_discrete,theta_flow,deviation\n";
    for (size_t k = 0; k < report.tau.size(); ++k)
        out << format_number(report.tau[k]) << ',' << format_number(report.theta_discrete[k])
            << ',' << format_number(report.theta_flow[k]) << ','
            << format_number(report.deviation[k]) << '\n';
    return out.str();
}

std::string orbit_svg(const OrbitRecord& orbit, const std::vector<double>& reference_angles) {
    constexpr double width = 800, height = 500;
    constexpr double ml = 70, mr = 20, mt = 20, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;
    const size_t n = orbit.theta_seq.size();
    const double kmax = n > 1 ? static_cast<double>(n - 1) : 1.0;

    auto px = [&](double k) { return ml + pw * k / kmax; };
    auto py = [&](double theta) { return mt + ph * (1.0 - theta / two_pi); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    // y ticks at multiples of pi/2
    static const char* ylabels[] = {"0", "pi/2", "pi", "3pi/2", "2pi"};
    for (int i = 0; i <= 4; ++i) {
        double theta = i * std::numbers::pi / 2.0;
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << svg_coord(py(theta)) << "\" x2=\"" << ml
            << "\" y2=\"" << svg_coord(py(theta)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << ml - 10 << "\" y=\"" << svg_coord(py(theta) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << ylabels[i] << "</text>\n";
    }
    // x ticks: 8 divisions
    for (int i = 0; i <= 8; ++i) {
        double k = kmax * i / 8.0;
        svg << "<line x1=\"" << svg_coord(px(k)) << "\" y1=\"" << mt + ph << "\" x2=\""
            << svg_coord(px(k)) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << svg_coord(px(k)) << "\" y=\"" << mt + ph + 18
            << "\" font-size=\"12\" text-anchor=\"middle\">" << format_number(k, 4)
            << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">iteration k</text>\n";
    svg << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << mt + ph / 2 << ")\">theta_k</text>\n";

    for (double ref : reference_angles)
        svg << "<line x1=\"" << ml << "\" y1=\"" << svg_coord(py(ref)) << "\" x2=\"" << ml + pw
            << "\" y2=\"" << svg_coord(py(ref))
            << "\" stroke=\"#c00000\" stroke-dasharray=\"6,4\"/>\n";

    svg << "<polyline fill=\"none\" stroke=\"#2859a8\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < n; ++k) {
        if (k) svg << ' ';
        svg << svg_coord(px(static_cast<double>(k))) << ',' << svg_coord(py(orbit.theta_seq[k]));
    }
    svg << "\"/>\n";

    for (size_t k = 0; k < n; ++k)
        svg << "<circle cx=\"" << svg_coord(px(static_cast<double>(k))) << "\" cy=\""
            << svg_coord(py(orbit.theta_seq[k])) << "\" r=\"2.2\" fill=\"#2859a8\"/>\n";

    svg << "</svg>\n";
    return svg.str();
}

std::string scan_svg(const ScanResult& result) {
    const int res = result.resolution;
    constexpr double cell = 28, ml = 80, mt = 20, mb = 60, legend_w = 150;
    const double pw = cell * res, ph = cell * res;
    const double width = ml + pw + 20 + legend_w, height = mt + ph + mb;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    for (int i = 0; i < res; ++i) {     // d0 index -> x
        for (int j = 0; j < res; ++j) { // eps index -> y (up)
            const ScanCell& c = result.cells[static_cast<size_t>(i) * res + j];
            double x = ml + i * cell;
            double y = mt + ph - (j + 1) * cell;
            svg << "<rect x=\"" << svg_coord(x) << "\" y=\"" << svg_coord(y) << "\" width=\""
                << cell << "\" height=\"" << cell << "\" fill=\"" << scan_class_color(c)
                << "\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
        }
    }
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    const ScanCell& first = result.cells.front();
    const ScanCell& last = result.cells.back();
    svg << "<text x=\"" << ml << "\" y=\"" << mt + ph + 18
        << "\" font-size=\"12\" text-anchor=\"middle\">" << format_number(first.d0, 4)
        << "</text>\n";
    svg << "<text x=\"" << ml + pw << "\" y=\"" << mt + ph + 18
        << "\" font-size=\"12\" text-anchor=\"middle\">" << format_number(last.d0, 4)
        << "</text>\n";
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << mt + ph + 40
        << "\" font-size=\"13\" text-anchor=\"middle\">d0</text>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << mt + ph
        << "\" font-size=\"12\" text-anchor=\"end\">" << format_number(first.eps, 4)
        << "</text>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << mt + 10
        << "\" font-size=\"12\" text-anchor=\"end\">" << format_number(last.eps, 4)
        << "</text>\n";
    svg << "<text x=\"24\" y=\"" << mt + ph / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 24 "
        << mt + ph / 2 << ")\">eps</text>\n";

    struct LegendEntry { const char* color; const char* label; };
    static const LegendEntry legend[] = {{"#4472c4", "FixedPoint"},
                                         {"#70ad47", "Periodic"},
                                         {"#c00000", "Chaotic"},
                                         {"#ffc000", "Undetermined"},
                                         {"#9e9e9e", "Undefined"}};
    double lx = ml + pw + 20, ly = mt + 10;
    for (const auto& entry : legend) {
        svg << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" fill=\""
            << entry.color << "\"/>\n";
        svg << "<text x=\"" << lx + 20 << "\" y=\"" << ly + 12 << "\" font-size=\"12\">"
            << entry.label << "</text>\n";
        ly += 22;
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace corecdyn
