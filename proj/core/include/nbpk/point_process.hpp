#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nbpk/levy.hpp"
#include "nbpk/random.hpp"

namespace nbpk {

/// Ordered jumps Δ_1 > Δ_2 > ... > Δ_N of a Poisson point process with
/// intensity v·ρ, truncated once the expected un-simulated mass is small.
struct JumpSequence {
  LevyFamily family;
  double scale_v = 0.0;
  std::vector<double> jumps;
  double kept_total = 0.0;
  /// Expected mass of the points below the last simulated position,
  /// v · m(Δ_N). Never folded into `jumps`.
  double tail_bound = 0.0;
  /// Unit-rate arrival time at which simulation stopped.
  double last_arrival = 0.0;

  std::size_t size() const noexcept { return jumps.size(); }
};

struct TruncationSpec {
  double tol = 1e-4;
  std::size_t max_jumps = 1'000'000;
  /// Simulation never stops with fewer kept jumps than this (after the
  /// excluded largest ones), e.g. when k size-biased picks must be drawn.
  std::size_t min_jumps = 1;

  void validate() const;
};

/// Raised when max_jumps is reached before the tail criterion holds. Carries
/// the partial sequence (with its tail bound at the stopping point).
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, JumpSequence partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const JumpSequence& partial() const noexcept { return partial_; }

 private:
  JumpSequence partial_;
};

/// Ordered jumps of PPP(v ρ) by inverse-tail mapping of unit-rate arrivals,
/// Δ_i = Λ̄^{-1}(Γ_i / v). Generalised-gamma jumps are produced by thinning a
/// stable proposal with acceptance e^{-x}, which yields the same ordered
/// point process without a root solve per jump.
///
/// Simulation stops at the first N with v·m(Δ_N) <= tol · (kept total),
/// where the kept total excludes the `exclude_largest` biggest jumps (used
/// by the trimmed construction).
JumpSequence sample_poisson_jumps(const LevyFamily& fam, double v, const TruncationSpec& trunc,
                                  RandomStream& rng, std::size_t exclude_largest = 0);

/// Ordered jumps of the negative binomial process BN(r, ρ), realised as
/// PPP(G ρ) with G ~ Gamma(r, 1) recorded in `scale_v`.
JumpSequence sample_nb_jumps(const LevyFamily& fam, double r, const TruncationSpec& trunc, RandomStream& rng);

/// Same law as sample_nb_jumps, built by running the subordinator with
/// Lévy density ρ up to the random time σ_r of an independent gamma
/// subordinator; σ_r is obtained from the gamma subordinator's own jumps.
JumpSequence sample_subordinated_jumps(const LevyFamily& fam, double r, const TruncationSpec& trunc,
                                       RandomStream& rng);

}  // namespace nbpk
