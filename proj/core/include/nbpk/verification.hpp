#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nbpk/stats.hpp"

namespace nbpk {

struct VerifyOptions {
  /// Multiplies every Monte Carlo sample size (floored at 200). 1 reproduces
  /// the acceptance configuration.
  double sample_scale = 1.0;
};

struct Criterion {
  std::string name;
  std::string suite;
  std::string description;
  /// Supplementary checks are not part of the numbered acceptance list.
  bool supplementary = false;
  std::function<VerificationReport(std::uint64_t seed, const VerifyOptions&)> run;
};

/// Every registered check, in a fixed order.
const std::vector<Criterion>& criteria();

/// Suite names in registration order, without duplicates.
std::vector<std::string> suite_names();

/// Looks a check up by name; nullptr when absent.
const Criterion* find_criterion(const std::string& name);

/// Runs one check with its random stream derived from (seed, name).
/// Exceptions thrown by the check become a failed report.
VerificationReport run_criterion(const Criterion& c, std::uint64_t seed, const VerifyOptions& opts = {});

/// Runs every check in `suite`, or all checks when suite is "all".
/// Unknown suites raise DomainError.
std::vector<VerificationReport> run_suite(const std::string& suite, std::uint64_t seed,
                                          const VerifyOptions& opts = {});

}  // namespace nbpk
