#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nbpk/stats.hpp"

namespace nbpk::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Runs the command line `args` (program name excluded). Tabular output goes
/// to `out` unless an output file is selected; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json report_to_json(const VerificationReport& rep);
std::string reports_to_csv(const std::vector<VerificationReport>& reps);

}  // namespace nbpk::cli
