#include "nbpk/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nbpk/errors.hpp"
#include "nbpk/special_fn.hpp"
#include "nbpk/stats.hpp"

namespace nbpk {

double e1_statistic(const SimplexSample& sample, double alpha, std::size_t m) {
  detail::require(alpha > 0.0 && alpha < 1.0, "e1_statistic: alpha must lie in (0, 1)");
  detail::require(m >= 1, "e1_statistic: m must be positive");
  detail::require(sample.order == WeightOrder::ranked, "e1_statistic: sample must be ranked");
  detail::require(sample.weights.size() >= m, "e1_statistic: fewer than m weights");
  return static_cast<double>(m) * std::pow(sample.weights[m - 1] / sample.weights[0], alpha);
}

double e1_statistic(const JumpSequence& jumps) {
  detail::require(jumps.family.is<Stable>(), "e1_statistic: exact form needs stable jumps");
  detail::require(!jumps.jumps.empty(), "e1_statistic: empty jump sequence");
  return tail_mass(jumps.family, jumps.jumps.front());
}

namespace {

McEstimate finish(const std::vector<double>& values, std::size_t max_jumps) {
  const MeanEstimate m = mc_mean(values);
  return {m.mean, m.std_error, values.size(), std::max<std::size_t>(max_jumps, 1)};
}

}  // namespace

McEstimate change_of_measure_expect(const WeightFunctional& f, double alpha, unsigned r, std::size_t n_samples,
                                    const TruncationSpec& trunc, RandomStream& rng) {
  detail::require(r >= 1, "change_of_measure_expect: r must be a positive integer");
  detail::require(n_samples >= 2, "change_of_measure_expect: need at least two samples");
  const LevyFamily fam = LevyFamily::stable(alpha, 1.0);
  const double log_r_fact = ln_gamma(static_cast<double>(r) + 1.0);
  std::vector<double> values;
  values.reserve(n_samples);
  std::size_t max_jumps = 0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const JumpSequence js = sample_poisson_jumps(fam, 1.0, trunc, rng);
    max_jumps = std::max(max_jumps, js.size());
    const double e1 = e1_statistic(js);
    const double weight = std::exp(static_cast<double>(r) * std::log(e1) - log_r_fact);
    SimplexSample v = normalize(js);
    v.provenance.construction = "jump:stable (exact E1)";
    values.push_back(weight * f(v));
  }
  return finish(values, max_jumps);
}

McEstimate trimmed_direct_expect(const WeightFunctional& f, double alpha, unsigned r, std::size_t n_samples,
                                 const TruncationSpec& trunc, RandomStream& rng) {
  detail::require(n_samples >= 2, "trimmed_direct_expect: need at least two samples");
  std::vector<double> values;
  values.reserve(n_samples);
  std::size_t max_jumps = 0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const SimplexSample v = sample_pd_r_trimmed(alpha, r, trunc, rng);
    max_jumps = std::max(max_jumps, v.weights.size() + r);
    values.push_back(f(v));
  }
  return finish(values, max_jumps);
}

}  // namespace nbpk
