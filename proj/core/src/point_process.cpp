#include "nbpk/point_process.hpp"

#include <cmath>

#include "nbpk/errors.hpp"
#include "nbpk/special_fn.hpp"

namespace nbpk {

void TruncationSpec::validate() const {
  detail::require(tol > 0.0 && tol < 1.0, "TruncationSpec: tol must lie in (0, 1)");
  detail::require(max_jumps >= 1, "TruncationSpec: max_jumps must be >= 1");
  detail::require(min_jumps >= 1 && min_jumps <= max_jumps, "TruncationSpec: need 1 <= min_jumps <= max_jumps");
}

namespace {

// Accumulates kept jumps and applies the stopping rule.
class JumpCollector {
 public:
  JumpCollector(const LevyFamily& fam, double v, const TruncationSpec& trunc, std::size_t exclude)
      : seq_{fam, v, {}, 0.0, 0.0, 0.0}, trunc_(trunc), exclude_(exclude) {
    seq_.jumps.reserve(1024);
  }

  void push(double jump) {
    seq_.jumps.push_back(jump);
    seq_.kept_total += jump;
    if (seq_.jumps.size() <= exclude_) excluded_total_ += jump;
  }

  // True once the expected tail below `position` is small enough.
  bool done(double position, double arrival) {
    seq_.last_arrival = arrival;
    seq_.tail_bound = seq_.scale_v * small_jump_mean(seq_.family, position);
    return enough_jumps() && seq_.tail_bound <= trunc_.tol * (seq_.kept_total - excluded_total_);
  }

  // Cheap pre-test with any upper bound on the tail mass below the position.
  bool may_be_done(double tail_upper) const {
    return enough_jumps() && tail_upper <= trunc_.tol * (seq_.kept_total - excluded_total_);
  }

  void check_budget(double position, double arrival) {
    if (seq_.jumps.size() >= trunc_.max_jumps) {
      done(position, arrival);
      throw TruncationError("sample_poisson_jumps: max_jumps reached before the tail tolerance", seq_);
    }
  }

  JumpSequence take() { return std::move(seq_); }

 private:
  bool enough_jumps() const { return seq_.jumps.size() >= exclude_ + trunc_.min_jumps; }

  JumpSequence seq_;
  TruncationSpec trunc_;
  std::size_t exclude_;
  double excluded_total_ = 0.0;
};

}  // namespace

JumpSequence sample_poisson_jumps(const LevyFamily& fam, double v, const TruncationSpec& trunc,
                                  RandomStream& rng, std::size_t exclude_largest) {
  detail::require(v > 0.0 && std::isfinite(v), "sample_poisson_jumps: v must be positive");
  trunc.validate();
  JumpCollector out(fam, v, trunc, exclude_largest);
  double arrival = 0.0;

  if (fam.is<GenGamma>()) {
    // Proposal: stable with C α = α / Γ(1-α); keep a point at x w.p. e^{-x}.
    // The proposal's small-jump mean dominates the target's, so the exact
    // tail is only evaluated once the proposal bound passes.
    const double alpha = fam.as<GenGamma>().alpha;
    const LevyFamily proposal = LevyFamily::stable(alpha, std::exp(-ln_gamma(1.0 - alpha)));
    for (;;) {
      arrival += rng.exponential();
      const double x = inv_tail(proposal, arrival / v);
      if (!(x > 0.0)) break;
      const bool accepted = rng.uniform() < std::exp(-x);
      if (accepted) out.push(x);
      if (out.may_be_done(v * small_jump_mean(proposal, x)) && out.done(x, arrival)) break;
      if (accepted) out.check_budget(x, arrival);
    }
    return out.take();
  }

  for (;;) {
    arrival += rng.exponential();
    const double x = inv_tail(fam, arrival / v);
    if (!(x > 0.0)) break;  // underflow: remaining mass is below double range
    out.push(x);
    if (out.done(x, arrival)) break;
    out.check_budget(x, arrival);
  }
  return out.take();
}

JumpSequence sample_nb_jumps(const LevyFamily& fam, double r, const TruncationSpec& trunc, RandomStream& rng) {
  detail::require(r > 0.0 && std::isfinite(r), "sample_nb_jumps: r must be positive");
  trunc.validate();
  const double v = sample_gamma(r, rng);
  return sample_poisson_jumps(fam, v, trunc, rng);
}

JumpSequence sample_subordinated_jumps(const LevyFamily& fam, double r, const TruncationSpec& trunc,
                                       RandomStream& rng) {
  detail::require(r > 0.0 && std::isfinite(r), "sample_subordinated_jumps: r must be positive");
  trunc.validate();
  // Gamma subordinator (ρ(z) = e^{-z}/z) observed at time r; its jumps decay
  // geometrically, so a very tight tolerance is cheap.
  const JumpSequence clock = sample_poisson_jumps(LevyFamily::gamma(1.0), r, {1e-14, 100000}, rng);
  const double sigma = clock.kept_total + clock.tail_bound;
  return sample_poisson_jumps(fam, sigma, trunc, rng);
}

}  // namespace nbpk
