#pragma once

#include <string>

#include "report.hpp"

namespace lgp {

// Verification suites behind the CLI subcommands; each takes a JSON config
// (flat keys, documented in the README) and returns a Report whose `passed`
// flag drives the exit code.
Report run_grsk_suite(const std::string& config_json);
Report run_identity_suite(const std::string& config_json);
Report run_laplace_suite(const std::string& config_json);
Report run_whittaker_suite(const std::string& config_json);
Report run_dist_table(const std::string& config_json);
Report run_phase_experiment(const std::string& config_json);

// F_GUE through a cached fine-grid table; used by the KS fits where a few
// thousand CDF evaluations are needed.
double f_gue_interpolated(double t);

}  // namespace lgp
