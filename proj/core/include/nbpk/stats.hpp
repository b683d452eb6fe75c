#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

namespace nbpk {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Asymptotic Kolmogorov distribution tail Q(λ) = P(K > λ).
double kolmogorov_q(double lambda);

/// Asymptotic p-value for a KS distance d with effective size n_eff,
/// using λ = (√n + 0.12 + 0.11 / √n) d.
double ks_p_value(double d, double n_eff);

/// Two-sample Kolmogorov–Smirnov test; each sample needs at least 100 points.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Two-sample KS of `a` against the weighted empirical distribution of `b`
/// (weights self-normalised). The size of `b` enters through the Kish
/// effective size (Σw)² / Σw².
KsResult ks_two_sample_weighted(std::span<const double> a, std::span<const double> b,
                                std::span<const double> weights_b);

/// One-sample KS against a distribution function. The cdf is called once per
/// point in increasing order of the sample; values decreasing by more than
/// 1e-9 along the sorted sample raise DomainError.
KsResult ks_one_sample(std::span<const double> a, const std::function<double(double)>& cdf);

/// Sample mean and standard error (n - 1 denominator); needs two values.
MeanEstimate mc_mean(std::span<const double> values);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of observed counts against cell probabilities
/// (normalised internally); dof = cells - 1. Every expected count must be
/// positive.
ChiSquareResult chi_square_gof(std::span<const double> observed, std::span<const double> probabilities);

/// Outcome of one acceptance check.
struct VerificationReport {
  std::string test_name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::optional<double> p_value;
  bool passed = false;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::string notes;
};

}  // namespace nbpk
