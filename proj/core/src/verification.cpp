#include "nbpk/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>
#include <vector>

#include "nbpk/densities.hpp"
#include "nbpk/errors.hpp"
#include "nbpk/estimators.hpp"
#include "nbpk/levy.hpp"
#include "nbpk/point_process.hpp"
#include "nbpk/quadrature.hpp"
#include "nbpk/random.hpp"
#include "nbpk/simplex.hpp"
#include "nbpk/special_fn.hpp"

namespace nbpk {

namespace {

constexpr double kLevel = 1e-3;
constexpr double kHalf = 0.5;

std::size_t scaled(std::size_t base, const VerifyOptions& opts) {
  const double n = std::round(static_cast<double>(base) * opts.sample_scale);
  return std::max<std::size_t>(200, static_cast<std::size_t>(n));
}

RandomStream stream_for(const std::string& name, std::uint64_t seed) {
  return RandomStream(seed, hash_name(name.c_str()));
}

// Runs a jump sampler; hitting max_jumps keeps the partial sequence, whose
// tail bound still accounts for the unsimulated mass.
template <class F>
JumpSequence jumps_or_partial(F&& sampler) {
  try {
    return sampler();
  } catch (const TruncationError& e) {
    return e.partial();
  }
}

std::string fmt_num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

VerificationReport ks_report(const std::string& name, std::uint64_t seed, std::size_t n, const KsResult& ks,
                             std::string notes) {
  VerificationReport rep;
  rep.test_name = name;
  rep.statistic = ks.statistic;
  rep.threshold = kLevel;
  rep.p_value = ks.p_value;
  rep.passed = ks.p_value > kLevel;
  rep.n_samples = n;
  rep.seed = seed;
  rep.notes = std::move(notes);
  return rep;
}

// Several KS comparisons folded into one report: smallest p-value wins.
struct KsFold {
  double min_p = 1.0;
  double max_d = 0.0;
  std::string notes;

  void add(const std::string& label, const KsResult& ks) {
    min_p = std::min(min_p, ks.p_value);
    max_d = std::max(max_d, ks.statistic);
    if (!notes.empty()) notes += "; ";
    notes += label + ": D=" + fmt_num(ks.statistic) + " p=" + fmt_num(ks.p_value);
  }
};

VerificationReport fold_report(const std::string& name, std::uint64_t seed, std::size_t n, const KsFold& f) {
  return ks_report(name, seed, n, {f.max_d, f.min_p}, f.notes);
}

VerificationReport bound_report(const std::string& name, std::uint64_t seed, std::size_t n, double statistic,
                                double threshold, std::string notes) {
  VerificationReport rep;
  rep.test_name = name;
  rep.statistic = statistic;
  rep.threshold = threshold;
  rep.passed = std::isfinite(statistic) && statistic < threshold;
  rep.n_samples = n;
  rep.seed = seed;
  rep.notes = std::move(notes);
  return rep;
}

// First size-biased pick of the normalised jumps, W̃_1 = J̃_1 / T_0.
double first_pick_fraction(const JumpSequence& js, RandomStream& rng) {
  const SizeBiasedDraw d = size_biased_permutation(js, 1, rng);
  return d.picks[0] / d.remaining_sums[0];
}

double total_of(const JumpSequence& js) { return js.kept_total + js.tail_bound; }

// ---------------------------------------------------------------------------

VerificationReport stick_vs_jumps_pd(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(20000, opts);
  const LevyFamily fam = LevyFamily::stable(kHalf);
  const TruncationSpec trunc{};
  std::vector<double> jump_side(n);
  std::vector<double> stick_side(n);
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = jumps_or_partial([&] { return sample_poisson_jumps(fam, 1.0, trunc, rng); });
    jump_side[i] = first_pick_fraction(js, rng);
  }
  for (std::size_t i = 0; i < n; ++i) stick_side[i] = 1.0 - sample_beta(kHalf, 1.0 - kHalf, rng);
  return ks_report(name, seed, n, ks_two_sample(jump_side, stick_side),
                   "first size-biased pick, PPP(rho_0.5) vs 1 - Beta(0.5, 0.5)");
}

VerificationReport r_invariance(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(20000, opts);
  const LevyFamily fam = LevyFamily::stable(kHalf);
  const TruncationSpec trunc{};
  std::vector<double> r1(n);
  std::vector<double> r4(n);
  for (std::size_t i = 0; i < n; ++i) {
    r1[i] = normalize(jumps_or_partial([&] { return sample_nb_jumps(fam, 1.0, trunc, rng); })).weights[0];
  }
  for (std::size_t i = 0; i < n; ++i) {
    r4[i] = normalize(jumps_or_partial([&] { return sample_nb_jumps(fam, 4.0, trunc, rng); })).weights[0];
  }
  return ks_report(name, seed, n, ks_two_sample(r1, r4), "largest weight, PK^(1) vs PK^(4) of rho_0.5");
}

VerificationReport gamma_stick(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(20000, opts);
  const LevyFamily fam = LevyFamily::gamma(1.0);
  const TruncationSpec trunc{};
  std::vector<double> jump_side(n);
  std::vector<double> stick_side(n);
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = jumps_or_partial([&] { return sample_nb_jumps(fam, 2.0, trunc, rng); });
    jump_side[i] = first_pick_fraction(js, rng);
  }
  for (std::size_t i = 0; i < n; ++i) stick_side[i] = sample_pk_r_gamma_stick(1.0, 2.0, 1, rng).weights[0];
  return ks_report(name, seed, n, ks_two_sample(jump_side, stick_side),
                   "first size-biased pick of PK^(2)(rho_theta=1), jumps vs Beta(G theta, 1) sticks");
}

VerificationReport pd_alpha_theta(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(20000, opts);
  const LevyFamily fam = LevyFamily::gen_gamma(kHalf);
  const TruncationSpec trunc{};
  std::vector<double> stick_side(n);
  std::vector<double> nbpp_side(n);
  for (std::size_t i = 0; i < n; ++i) stick_side[i] = sample_pd_stick_ranked(kHalf, 1.0, 1, 10'000'000, rng).weights[0];
  for (std::size_t i = 0; i < n; ++i) {
    nbpp_side[i] = normalize(jumps_or_partial([&] { return sample_nb_jumps(fam, 2.0, trunc, rng); })).weights[0];
  }
  return ks_report(name, seed, n, ks_two_sample(stick_side, nbpp_side),
                   "largest weight, PD(0.5, 1) sticks vs PK^(2) of the generalised gamma density");
}

VerificationReport moment_formula(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(100000, opts);
  const LevyFamily fam = LevyFamily::stable(kHalf, 1.0);
  const TruncationSpec trunc{};
  double worst = 0.0;
  std::string notes;
  for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      const JumpSequence js =
          jumps_or_partial([&] { return sample_nb_jumps(fam, 1.0 + static_cast<double>(k), trunc, rng); });
      values[i] = std::pow(total_of(js), -static_cast<double>(k) * kHalf);
    }
    const MeanEstimate m = mc_mean(values);
    const double target = inverse_moment(kHalf, 1.0, 1.0, k);
    const double z = std::abs(m.mean - target) / m.std_error;
    worst = std::max(worst, z);
    if (!notes.empty()) notes += "; ";
    notes += "n=" + std::to_string(k) + ": mean=" + fmt_num(m.mean) + " se=" + fmt_num(m.std_error) +
             " target=" + fmt_num(target) + " |z|=" + fmt_num(z);
  }
  return bound_report(name, seed, n, worst, 3.0, notes);
}

VerificationReport laplace_identity(const std::string& name, std::uint64_t seed, const VerifyOptions&) {
  double worst = 0.0;
  std::string notes;
  for (double r : {1.0, 2.0}) {
    const DensityContext ctx{LevyFamily::stable(kHalf, 1.0), r};
    for (double lambda : {0.5, 1.0, 2.0}) {
      const double numeric = g_r_laplace_transform(ctx, lambda, QuadratureSpec{1e-13, 1e-9, 500});
      const double exact = std::pow(1.0 + std::sqrt(std::numbers::pi * lambda), -r);
      const double rel = std::abs(numeric / exact - 1.0);
      worst = std::max(worst, rel);
      if (!notes.empty()) notes += "; ";
      notes += "r=" + fmt_num(r) + " lambda=" + fmt_num(lambda) + " rel=" + fmt_num(rel);
    }
  }
  return bound_report(name, seed, 0, worst, 1e-4, notes);
}

VerificationReport recursion(const std::string& name, std::uint64_t seed, const VerifyOptions&) {
  const DensityContext ctx{LevyFamily::stable(kHalf, 1.0), 1.0};
  double worst = 0.0;
  std::string notes;
  for (double t : {0.5, 1.0, 2.0}) {
    const double g = g_r_density(ctx, t);
    const double rel = std::abs(g - g_r_recursion_rhs(ctx, t)) / g;
    worst = std::max(worst, rel);
    if (!notes.empty()) notes += "; ";
    notes += "t=" + fmt_num(t) + " rel=" + fmt_num(rel);
  }
  return bound_report(name, seed, 0, worst, 1e-3, notes);
}

VerificationReport pick_density_norm(const std::string& name, std::uint64_t seed, const VerifyOptions&) {
  double worst = 0.0;
  std::string notes;
  for (double r : {1.0, 2.0}) {
    const DensityContext ctx{LevyFamily::stable(kHalf, 1.0), r};
    EndpointHints hints;
    hints.left_power = 2.0;
    const double mass = quad_adaptive([&](double w) { return (w <= 0.0 || w >= 1.0) ? 0.0 : first_pick_density(ctx, w, 1.0); },
                                      0.0, 1.0, QuadratureSpec{1e-12, 1e-9, 500}, hints);
    const double err = std::abs(mass - 1.0);
    worst = std::max(worst, err);
    if (!notes.empty()) notes += "; ";
    notes += "r=" + fmt_num(r) + " integral=" + fmt_num(mass);
  }
  return bound_report(name, seed, 0, worst, 1e-4, notes);
}

VerificationReport marginals(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(10000, opts);
  const LevyFamily fam = LevyFamily::stable(kHalf, 1.0);
  const TruncationSpec trunc{};
  std::vector<double> t0(n);
  std::vector<double> t1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = jumps_or_partial([&] { return sample_nb_jumps(fam, 1.0, trunc, rng); });
    const SizeBiasedDraw d = size_biased_permutation(js, 1, rng);
    t0[i] = d.remaining_sums[0];
    t1[i] = d.remaining_sums[1];
  }
  const DensityContext ctx{fam, 1.0};
  CumulativeDistribution cdf_t0([&](double t) { return t <= 0.0 ? 0.0 : g_r_density(ctx, t); }, 0.0);
  CumulativeDistribution cdf_t1(
      [&](double t) { return t <= 0.0 ? 0.0 : marginal_tn_density(kHalf, 1.0, 1.0, 1, t); }, 0.0);
  KsFold fold;
  fold.add("T vs g_1", ks_one_sample(t0, [&](double x) { return cdf_t0(x); }));
  fold.add("T_1 vs L_1 t^-a g_2", ks_one_sample(t1, [&](double x) { return cdf_t1(x); }));
  return fold_report(name, seed, n, fold);
}

VerificationReport trimmed_equivalence(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(20000, opts);
  // The expected tail enters the normaliser, so V_1 carries only the O(tol)
  // fluctuation of the unsimulated mass; 1e-3 is far below the KS resolution
  // at this size and keeps the five samplers inside the time budget.
  const TruncationSpec trunc{1e-3, 1'000'000};
  auto draw = [&](auto&& sampler) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sampler().weights[0];
    return out;
  };
  KsFold fold;
  {
    const auto a = draw([&] { return sample_pd_r_trimmed(kHalf, 2, trunc, rng); });
    const auto b = draw([&] { return sample_pd_r_nbpp(kHalf, 2.0, trunc, rng); });
    const auto c = draw([&] { return sample_pd_r_ratio(kHalf, 2.0, trunc, rng); });
    fold.add("r=2 trimmed/nbpp", ks_two_sample(a, b));
    fold.add("r=2 trimmed/ratio", ks_two_sample(a, c));
    fold.add("r=2 nbpp/ratio", ks_two_sample(b, c));
  }
  {
    const auto a = draw([&] { return sample_pd_r_trimmed(kHalf, 1, trunc, rng); });
    const auto c = draw([&] { return sample_pd_r_ratio(kHalf, 1.0, trunc, rng); });
    fold.add("r=1 trimmed/ratio", ks_two_sample(a, c));
  }
  return fold_report(name, seed, n, fold);
}

VerificationReport change_of_measure(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(10000, opts);
  const TruncationSpec trunc{};
  struct Named {
    const char* label;
    WeightFunctional f;
  };
  const std::vector<Named> fs{
      {"V1", [](const SimplexSample& v) { return v.weights[0]; }},
      {"V1^2", [](const SimplexSample& v) { return v.weights[0] * v.weights[0]; }},
      {"1{V1<0.2}", [](const SimplexSample& v) { return v.weights[0] < 0.2 ? 1.0 : 0.0; }},
  };
  // One set of draws per estimator; every functional is evaluated on it.
  std::vector<double> weight(n);
  std::vector<std::vector<double>> cm(fs.size(), std::vector<double>(n));
  std::vector<std::vector<double>> direct(fs.size(), std::vector<double>(n));
  const LevyFamily fam = LevyFamily::stable(kHalf, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = jumps_or_partial([&] { return sample_poisson_jumps(fam, 1.0, trunc, rng); });
    weight[i] = e1_statistic(js);  // E_1^r / r! with r = 1
    const SimplexSample v = normalize(js);
    for (std::size_t k = 0; k < fs.size(); ++k) cm[k][i] = weight[i] * fs[k].f(v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const SimplexSample v = sample_pd_r_trimmed(kHalf, 1, trunc, rng);
    for (std::size_t k = 0; k < fs.size(); ++k) direct[k][i] = fs[k].f(v);
  }
  double worst = 0.0;
  std::string notes;
  const MeanEstimate wm = mc_mean(weight);
  worst = std::abs(wm.mean - 1.0) / wm.std_error;
  notes = "weight mean=" + fmt_num(wm.mean) + " |z|=" + fmt_num(worst);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const MeanEstimate a = mc_mean(cm[k]);
    const MeanEstimate b = mc_mean(direct[k]);
    const double z = std::abs(a.mean - b.mean) / std::hypot(a.std_error, b.std_error);
    worst = std::max(worst, z);
    notes += "; " + std::string(fs[k].label) + ": cm=" + fmt_num(a.mean) + " direct=" + fmt_num(b.mean) +
             " |z|=" + fmt_num(z);
  }
  return bound_report(name, seed, n, worst, 3.0, notes);
}

VerificationReport support_indicator(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(10000, opts);
  const LevyFamily fam = LevyFamily::trunc_stable(kHalf);
  const TruncationSpec trunc{1e-4, 1'000'000, 2};
  std::size_t violations = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = jumps_or_partial([&] { return sample_nb_jumps(fam, 1.0, trunc, rng); });
    const SizeBiasedDraw d = size_biased_permutation(js, 2, rng);
    if (!(d.remaining_sums[2] < d_min(d.residual_fractions))) ++violations;
  }
  return bound_report(name, seed, n, static_cast<double>(violations), 0.5,
                      "violations of T_2 < d(U_1, U_2) over BN(1, rho*_0.5) draws: " + std::to_string(violations));
}

VerificationReport k_n_identity(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(100000, opts);
  // Looser tolerance keeps 2 x 10^5 draws within the runtime budget; the added
  // expected tail makes the truncation bias second order.
  const TruncationSpec trunc{1e-3, 1'000'000};
  double worst = 0.0;
  std::string notes;
  for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
    const ConstantCheck c = trimmed_constant_check(kHalf, 1.0, k, n, rng, trunc);
    const double z = std::abs(c.estimate - c.target) / c.std_error;
    worst = std::max(worst, z);
    if (!notes.empty()) notes += "; ";
    notes += "n=" + std::to_string(k) + ": est=" + fmt_num(c.estimate) + " se=" + fmt_num(c.std_error) +
             " K_n=" + fmt_num(c.target) + " |z|=" + fmt_num(z);
  }
  return bound_report(name, seed, n, worst, 3.0, notes);
}

// Picks 2.. of PK^(1), renormalised by T_1, against the first pick of PK^(2).
VerificationReport deletion(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(20000, opts);
  const LevyFamily fam = LevyFamily::stable(kHalf, 1.0);
  const TruncationSpec trunc{1e-4, 1'000'000, 2};
  std::vector<double> after(n);
  std::vector<double> fresh(n);
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = jumps_or_partial([&] { return sample_nb_jumps(fam, 1.0, trunc, rng); });
    const SizeBiasedDraw d = size_biased_permutation(js, 2, rng);
    after[i] = d.picks[1] / d.remaining_sums[1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = jumps_or_partial([&] { return sample_nb_jumps(fam, 2.0, trunc, rng); });
    fresh[i] = first_pick_fraction(js, rng);
  }
  return ks_report(name, seed, n, ks_two_sample(after, fresh),
                   "J_2 / T_1 under PK^(1)(rho_0.5) vs first pick of PK^(2)(rho_0.5), unweighted");
}

// Same comparison with the PK^(2) side tilted by L_1 T^{-α}, the density of
// T_1 relative to g_2.
VerificationReport deletion_tilted(const std::string& name, std::uint64_t seed, const VerifyOptions& opts) {
  auto rng = stream_for(name, seed);
  const std::size_t n = scaled(20000, opts);
  const LevyFamily fam = LevyFamily::stable(kHalf, 1.0);
  const TruncationSpec trunc{1e-4, 1'000'000, 2};
  const double l1 = l_n_constant(kHalf, 1.0, 1.0, 1);
  std::vector<double> after(n);
  std::vector<double> fresh(n);
  std::vector<double> tilt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = jumps_or_partial([&] { return sample_nb_jumps(fam, 1.0, trunc, rng); });
    const SizeBiasedDraw d = size_biased_permutation(js, 2, rng);
    after[i] = d.picks[1] / d.remaining_sums[1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = jumps_or_partial([&] { return sample_nb_jumps(fam, 2.0, trunc, rng); });
    const SizeBiasedDraw d = size_biased_permutation(js, 1, rng);
    fresh[i] = d.picks[0] / d.remaining_sums[0];
    tilt[i] = l1 * std::pow(d.remaining_sums[0], -kHalf);
  }
  const MeanEstimate tm = mc_mean(tilt);
  const KsResult ks = ks_two_sample_weighted(after, fresh, tilt);
  return ks_report(name, seed, n, ks,
                   "J_2 / T_1 under PK^(1) vs first pick of PK^(2) tilted by L_1 T^-a; tilt mean=" + fmt_num(tm.mean) +
                       " se=" + fmt_num(tm.std_error));
}

std::vector<Criterion> build_registry() {
  using Fn = VerificationReport (*)(const std::string&, std::uint64_t, const VerifyOptions&);
  struct Row {
    const char* name;
    const char* suite;
    const char* description;
    bool supplementary;
    Fn fn;
  };
  const Row rows[] = {
      {"stick-vs-jumps-pd-alpha-0", "stickbreaking",
       "KS: first size-biased pick of PPP(rho_a) vs 1 - Beta(a, 1 - a), a = 0.5", false, stick_vs_jumps_pd},
      {"r-invariance-stable", "stickbreaking", "KS: largest weight of PK^(1)(rho_a) vs PK^(4)(rho_a), a = 0.5", false,
       r_invariance},
      {"gamma-stick-vs-jumps", "stickbreaking",
       "KS: first size-biased pick of PK^(2)(rho_theta), jumps vs stick-breaking, theta = 1", false, gamma_stick},
      {"pd-alpha-theta-two-constructions", "pd-alpha-theta",
       "KS: largest weight of PD(0.5, 1) sticks vs PK^(2) of the generalised gamma density", false, pd_alpha_theta},
      {"moment-formula", "moments", "MC mean of T^{-n a} under BN(1 + n, rho_a) vs 1 / L_n, n = 1, 2", false,
       moment_formula},
      {"g-laplace-identity", "laplace", "Laplace transform of g_r vs (1 + sqrt(pi lambda))^{-r}", false,
       laplace_identity},
      {"g-recursion", "recursion", "g_1(t) vs the integral recursion at t = 0.5, 1, 2", false, recursion},
      {"pick-density-normalization", "pick-density", "first-pick density integrates to 1 at t = 1, r = 1, 2", false,
       pick_density_norm},
      {"remaining-sum-marginals", "marginals", "one-sample KS of T and T_1 under BN(1, rho_0.5)", false, marginals},
      {"trimmed-equivalences", "trimmed", "KS on V_1^(r): trimmed stable, NBPP(rho*), Beta-ratio", false,
       trimmed_equivalence},
      {"change-of-measure", "change-of-measure",
       "dual estimators of E f(V^(1)) for f = V_1, V_1^2, 1{V_1 < 0.2}; weight mean 1", false, change_of_measure},
      {"support-indicator", "trimmed", "T_2 < d(U_1, U_2) for size-biased picks of BN(1, rho*_0.5)", false,
       support_indicator},
      {"k-n-identity", "trimmed", "MC form of K_n, n = 1, 2, r = 1", false, k_n_identity},
      {"deletion-property", "deletion", "KS: J_{k+1} / T_k under PK^(1) vs first pick of PK^(2), k = 1", false,
       deletion},
      {"deletion-property-tilted", "deletion",
       "weighted KS: J_2 / T_1 under PK^(1) vs first pick of PK^(2) tilted by L_1 T^{-a}", true, deletion_tilted},
  };
  std::vector<Criterion> out;
  for (const Row& row : rows) {
    const std::string name = row.name;
    const Fn fn = row.fn;
    out.push_back({name, row.suite, row.description, row.supplementary,
                   [name, fn](std::uint64_t seed, const VerifyOptions& opts) { return fn(name, seed, opts); }});
  }
  return out;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> registry = build_registry();
  return registry;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const Criterion& c : criteria()) {
    if (std::find(out.begin(), out.end(), c.suite) == out.end()) out.push_back(c.suite);
  }
  return out;
}

const Criterion* find_criterion(const std::string& name) {
  for (const Criterion& c : criteria()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport run_criterion(const Criterion& c, std::uint64_t seed, const VerifyOptions& opts) {
  try {
    return c.run(seed, opts);
  } catch (const std::exception& e) {
    VerificationReport rep;
    rep.test_name = c.name;
    rep.statistic = std::numeric_limits<double>::quiet_NaN();
    rep.passed = false;
    rep.seed = seed;
    rep.notes = std::string("error: ") + e.what();
    return rep;
  }
}

std::vector<VerificationReport> run_suite(const std::string& suite, std::uint64_t seed, const VerifyOptions& opts) {
  const auto suites = suite_names();
  if (suite != "all" && std::find(suites.begin(), suites.end(), suite) == suites.end()) {
    throw DomainError("unknown suite: " + suite);
  }
  std::vector<VerificationReport> out;
  for (const Criterion& c : criteria()) {
    if (suite == "all" || c.suite == suite) out.push_back(run_criterion(c, seed, opts));
  }
  return out;
}

}  // namespace nbpk
