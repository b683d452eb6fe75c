#include "nbpk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "nbpk/errors.hpp"
#include "nbpk/special_fn.hpp"

namespace nbpk {

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // P(K <= λ) = √(2π)/λ Σ_{j>=1} exp(-(2j-1)² π² / (8λ²))
    const double x = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda));
    const double x8 = std::pow(x, 8.0);
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * x * (1.0 + x8 + x8 * x8 * x8);
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_p_value(double d, double n_eff) {
  detail::require(n_eff > 0.0, "ks_p_value: effective size must be positive");
  const double sn = std::sqrt(n_eff);
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

namespace {

std::vector<double> sorted_copy(std::span<const double> a) {
  std::vector<double> out(a.begin(), a.end());
  for (double x : out) detail::require(!std::isnan(x), "ks: NaN in sample");
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  detail::require(a.size() >= 100 && b.size() >= 100, "ks_two_sample: each sample needs at least 100 points");
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, ks_p_value(d, na * nb / (na + nb))};
}

KsResult ks_two_sample_weighted(std::span<const double> a, std::span<const double> b,
                                std::span<const double> weights_b) {
  detail::require(a.size() >= 100 && b.size() >= 100, "ks_two_sample_weighted: each sample needs at least 100 points");
  detail::require(weights_b.size() == b.size(), "ks_two_sample_weighted: one weight per point of b");
  const auto sa = sorted_copy(a);
  std::vector<std::size_t> order(b.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return b[x] < b[y]; });
  double wsum = 0.0;
  double wsq = 0.0;
  for (double w : weights_b) {
    detail::require(w >= 0.0 && std::isfinite(w), "ks_two_sample_weighted: weights must be finite and nonnegative");
    wsum += w;
    wsq += w * w;
  }
  detail::require(wsum > 0.0, "ks_two_sample_weighted: weights sum to zero");
  const double na = static_cast<double>(sa.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double cum_b = 0.0;
  double d = 0.0;
  while (i < sa.size() && j < order.size()) {
    const double x = std::min(sa[i], b[order[j]]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < order.size() && b[order[j]] == x) cum_b += weights_b[order[j++]];
    d = std::max(d, std::abs(static_cast<double>(i) / na - cum_b / wsum));
  }
  const double n_eff_b = wsum * wsum / wsq;
  return {d, ks_p_value(d, na * n_eff_b / (na + n_eff_b))};
}

KsResult ks_one_sample(std::span<const double> a, const std::function<double(double)>& cdf) {
  detail::require(a.size() >= 100, "ks_one_sample: sample needs at least 100 points");
  const auto sa = sorted_copy(a);
  const double n = static_cast<double>(sa.size());
  double d = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double raw = cdf(sa[i]);
    detail::require(std::isfinite(raw), "ks_one_sample: cdf returned a non-finite value");
    detail::require(raw >= prev - 1e-9, "ks_one_sample: cdf is not monotone on the sample");
    const double f = std::clamp(raw, 0.0, 1.0);
    prev = std::max(prev, raw);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, ks_p_value(d, n)};
}

MeanEstimate mc_mean(std::span<const double> values) {
  detail::require(values.size() >= 2, "mc_mean: need at least two values");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

ChiSquareResult chi_square_gof(std::span<const double> observed, std::span<const double> probabilities) {
  detail::require(observed.size() >= 2, "chi_square_gof: need at least two cells");
  detail::require(observed.size() == probabilities.size(), "chi_square_gof: one probability per cell");
  const double n = std::accumulate(observed.begin(), observed.end(), 0.0);
  const double psum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  detail::require(n > 0.0 && psum > 0.0, "chi_square_gof: empty counts or probabilities");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = n * probabilities[i] / psum;
    detail::require(expected > 0.0, "chi_square_gof: every expected count must be positive");
    stat += (observed[i] - expected) * (observed[i] - expected) / expected;
  }
  const std::size_t dof = observed.size() - 1;
  return {stat, dof, 1.0 - reg_lower_gamma(0.5 * static_cast<double>(dof), 0.5 * stat)};
}

}  // namespace nbpk
