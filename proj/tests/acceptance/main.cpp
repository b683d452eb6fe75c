// Acceptance runner: one PASS/FAIL line per check.
//   nbpk_acceptance [--criterion NAME] [--seed N] [--sample-scale X]
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "nbpk/verification.hpp"

int main(int argc, char** argv) {
  std::string only;
  std::uint64_t seed = 1;
  nbpk::VerifyOptions opts;
  for (int i = 1; i < argc; ++i) {
    const bool has_value = i + 1 < argc;
    if (std::strcmp(argv[i], "--criterion") == 0 && has_value) {
      only = argv[++i];
    } else if (std::strcmp(argv[i], "--seed") == 0 && has_value) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (std::strcmp(argv[i], "--sample-scale") == 0 && has_value) {
      opts.sample_scale = std::strtod(argv[++i], nullptr);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion NAME] [--seed N] [--sample-scale X]\n", argv[0]);
      return 2;
    }
  }
  if (!only.empty() && nbpk::find_criterion(only) == nullptr) {
    std::fprintf(stderr, "unknown criterion: %s\n", only.c_str());
    return 2;
  }
  int failures = 0;
  int index = 0;
  for (const nbpk::Criterion& c : nbpk::criteria()) {
    if (!c.supplementary) ++index;
    if (!only.empty() && c.name != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const nbpk::VerificationReport rep = nbpk::run_criterion(c, seed, opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string label = c.supplementary ? "supplementary" : "criterion " + std::to_string(index);
    std::printf("%s [%s] %s: statistic=%.6g threshold=%.6g", rep.passed ? "PASS" : "FAIL", label.c_str(),
                rep.test_name.c_str(), rep.statistic, rep.threshold);
    if (rep.p_value) std::printf(" p=%.6g", *rep.p_value);
    std::printf(" n=%zu seed=%llu time=%.1fs\n    %s\n", rep.n_samples, static_cast<unsigned long long>(rep.seed),
                secs, rep.notes.c_str());
    if (!rep.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
