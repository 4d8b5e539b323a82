#pragma once

#include "corecdyn/config.hpp"
#include "corecdyn/dynamics.hpp"
#include "corecdyn/variational.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace corecdyn {

/// Fixed-format double for text outputs: %.12g, locale-independent.
std::string format_number(double value, int significant_digits = 12);

/// Write a file atomically enough for our purposes; throws Error(IoError).
void write_text_file(const std::string& path, const std::string& content);

// JSON converters. Doubles survive the round trip exactly (shortest
// round-trip representation), so re-parsing an emitted document yields an
// equal in-memory record.
void to_json(nlohmann::json& j, const StepRecord& rec);
void from_json(const nlohmann::json& j, StepRecord& rec);
void to_json(nlohmann::json& j, const Termination& term);
void from_json(const nlohmann::json& j, Termination& term);
void to_json(nlohmann::json& j, const OrbitRecord& orbit);
void from_json(const nlohmann::json& j, OrbitRecord& orbit);
void to_json(nlohmann::json& j, const FunctionalReport& report);
void from_json(const nlohmann::json& j, FunctionalReport& report);
void to_json(nlohmann::json& j, const AdmissibilityReport& report);
void to_json(nlohmann::json& j, const OrbitClassification& cls);

/// orbit.csv body: header k,theta,d,t,V,dV,cosine and one row per
/// performed iteration (theta is the pre-step state).
std::string orbit_csv(const OrbitRecord& orbit);

/// fixed_points.csv body: header theta,d,lambda,mu,class. Constant profiles
/// produce the sentinel row "all,*,0,1,Marginal".
std::string fixed_points_csv(const FixedPointScan& scan);

/// scan.csv body: header d0,eps,class,lyapunov (lyapunov reported as 0 for
/// Undefined cells).
std::string scan_csv(const ScanResult& result);

/// flow.csv body: header tau,theta_discrete,theta_flow,deviation.
std::string flow_csv(const FlowCompareReport& report);

/// Line plot of theta_k against k with dashed reference lines at the given
/// angles (fixed points).
std::string orbit_svg(const OrbitRecord& orbit, const std::vector<double>& reference_angles);

/// Class-colored heatmap over the (d0, eps) grid with an embedded legend.
std::string scan_svg(const ScanResult& result);

} // namespace corecdyn
