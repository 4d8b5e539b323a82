#pragma once

#include "corecdyn/config.hpp"

#include <string>
#include <vector>

namespace corecdyn {

/// The five experiment commands. Each writes its files under out_dir and
/// returns the list of paths written; failures throw Error.
std::vector<std::string> cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> cmd_fixed_points(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> cmd_scan(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> cmd_functionals(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> cmd_flow_compare(const ExperimentConfig& cfg, const std::string& out_dir);

/// Dispatch by command name ("simulate", "fixed-points", "scan",
/// "functionals", "flow-compare").
std::vector<std::string> run_command(const std::string& command, const ExperimentConfig& cfg,
                                     const std::string& out_dir);

} // namespace corecdyn
