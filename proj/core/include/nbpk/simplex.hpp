#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nbpk/levy.hpp"
#include "nbpk/point_process.hpp"
#include "nbpk/random.hpp"

namespace nbpk {

enum class WeightOrder { ranked, size_biased };

struct Provenance {
  std::string construction;
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// A truncated point of the infinite simplex: the listed weights plus a
/// deficit that bounds the mass of everything not listed, so that
/// sum(weights) + deficit = 1.
struct SimplexSample {
  std::vector<double> weights;
  double deficit = 0.0;
  WeightOrder order = WeightOrder::ranked;
  Provenance provenance;

  double total() const;
};

/// Size-biased picks from a finite source together with the remaining sums
/// T_0 > T_1 > ... > T_k and the residual fractions U_i = T_i / T_{i-1}.
/// `picks[i]` is the value of the atom and `indices[i]` its position in the
/// source.
struct SizeBiasedDraw {
  std::vector<double> picks;
  std::vector<std::size_t> indices;
  std::vector<double> remaining_sums;
  std::vector<double> residual_fractions;

  /// (1 - U_n) Π_{i<n} U_i for n = 1..k.
  std::vector<double> stick_weights() const;
};

/// W_i = Δ_i / (kept_total + tail_bound); deficit = tail_bound / (same).
SimplexSample normalize(const JumpSequence& jumps);

/// PK(vρ): normalised ordered jumps of PPP(vρ).
SimplexSample sample_pk(const LevyFamily& fam, double v, const TruncationSpec& trunc, RandomStream& rng);

/// PK^(r)(ρ): normalised ordered jumps of BN(r, ρ).
SimplexSample sample_pk_r(const LevyFamily& fam, double r, const TruncationSpec& trunc, RandomStream& rng);

/// PK^(r)(ρ) through the gamma-subordinated process.
SimplexSample sample_pk_r_subordinated(const LevyFamily& fam, double r, const TruncationSpec& trunc,
                                       RandomStream& rng);

/// Sequential size-biased sampling without replacement of k atoms. The
/// deficit (or tail bound) is counted in T_0 but is never picked.
SizeBiasedDraw size_biased_permutation(const SimplexSample& source, std::size_t k, RandomStream& rng);
SizeBiasedDraw size_biased_permutation(const JumpSequence& source, std::size_t k, RandomStream& rng);

/// PD(α, θ), θ >= 0, by stick-breaking: U_i ~ Beta(θ + iα, 1 - α) and
/// Ṽ_n = (1 - U_n) Π_{i<n} U_i. Weights are in size-biased order and the
/// deficit is the residual product Π_{i<=n} U_i.
SimplexSample sample_pd_stick(double alpha, double theta, std::size_t n_terms, RandomStream& rng);

/// PK^(r)(ρ_θ) by stick-breaking: G ~ Gamma(r, 1), then U_i i.i.d.
/// Beta(Gθ, 1).
SimplexSample sample_pk_r_gamma_stick(double theta, double r, std::size_t n_terms, RandomStream& rng);

/// Sorts a size-biased sample into decreasing order. The result is flagged
/// ranked only when the deficit is below the smallest kept weight, i.e.
/// when no unlisted atom can outrank a listed one.
SimplexSample rank(const SimplexSample& sample);

/// Stick-breaking samplers that keep breaking until the deficit is below the
/// k-th largest weight, then return the k largest weights (exact ranked
/// head) with everything else folded into the deficit.
SimplexSample sample_pd_stick_ranked(double alpha, double theta, std::size_t k, std::size_t max_terms,
                                     RandomStream& rng);
SimplexSample sample_pk_r_gamma_stick_ranked(double theta, double r, std::size_t k, std::size_t max_terms,
                                             RandomStream& rng);

/// PD_α^(r) from the r-trimmed α-stable subordinator (C = 1) at time 1:
/// drop the r largest jumps and normalise the rest. r = 0 gives PD(α, 0).
SimplexSample sample_pd_r_trimmed(double alpha, std::size_t r, const TruncationSpec& trunc, RandomStream& rng);

/// PD_α^(r) as PK^(r)(ρ*_α) with the truncated-stable density; any r > 0.
SimplexSample sample_pd_r_nbpp(double alpha, double r, const TruncationSpec& trunc, RandomStream& rng);

/// PD_α^(r) from independent R_i ~ Beta((r + i)α, 1):
/// V_n = Π_{i<n} R_i / (1 + R_1 + R_1 R_2 + ...). The series stops once the
/// expected remainder falls below tol times the running sum. Exceeding
/// trunc.max_jumps terms raises TruncationError whose partial sequence holds
/// the products Π_{i<n} R_i (the jumps Δ_{r+n} / Δ_{r+1}).
SimplexSample sample_pd_r_ratio(double alpha, double r, const TruncationSpec& trunc, RandomStream& rng);

/// Expected remainder E[Σ_{m>n} Π_{i<=m} R_i | Π_{i<=n} R_i = p] of the ratio
/// series, p (r + n + 1) α / (1 - α).
double ratio_series_expected_tail(double alpha, double r, std::size_t n, double product);

}  // namespace nbpk
