#pragma once

#include <cstddef>
#include <functional>

#include "nbpk/point_process.hpp"
#include "nbpk/random.hpp"
#include "nbpk/simplex.hpp"

namespace nbpk {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  /// Largest number of jumps simulated for a single draw.
  std::size_t truncation_m = 0;
};

/// Limit form m · (V_m / V_1)^α of E_1 from a ranked PD(α, 0) sample.
/// Requires at least m weights in exact ranked order (jump constructions, or
/// a rank() result whose deficit is below its smallest weight).
double e1_statistic(const SimplexSample& sample, double alpha, std::size_t m);

/// Exact form C Δ_1^{-α} = Λ̄(Δ_1) from the underlying stable jumps.
double e1_statistic(const JumpSequence& jumps);

using WeightFunctional = std::function<double(const SimplexSample&)>;

/// E f(V^{(r)}) for V^{(r)} ~ PD_α^(r) as E[(E_1^r / r!) f(V)] over
/// V ~ PD(α, 0), with E_1 in its exact form. r must be a positive integer.
McEstimate change_of_measure_expect(const WeightFunctional& f, double alpha, unsigned r, std::size_t n_samples,
                                    const TruncationSpec& trunc, RandomStream& rng);

/// Plain Monte Carlo E f(V^{(r)}) over the r-trimmed stable construction.
McEstimate trimmed_direct_expect(const WeightFunctional& f, double alpha, unsigned r, std::size_t n_samples,
                                 const TruncationSpec& trunc, RandomStream& rng);

}  // namespace nbpk
