#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "nbpk/errors.hpp"
#include "nbpk/simplex.hpp"
#include "nbpk/special_fn.hpp"
#include "nbpk/stats.hpp"
#include "test_util.hpp"

using namespace nbpk;

namespace {

void expect_simplex(const SimplexSample& s) {
  EXPECT_NEAR(s.total(), 1.0, 1e-9);
  EXPECT_GE(s.deficit, 0.0);
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    EXPECT_GT(s.weights[i], 0.0);
    EXPECT_LT(s.weights[i], 1.0 + 1e-15);
    if (s.order == WeightOrder::ranked && i > 0) EXPECT_LE(s.weights[i], s.weights[i - 1]);
  }
}

JumpSequence make_jumps(std::vector<double> jumps, double tail) {
  JumpSequence js{LevyFamily::stable(0.5), 1.0, std::move(jumps), 0.0, tail, 0.0};
  js.kept_total = std::accumulate(js.jumps.begin(), js.jumps.end(), 0.0);
  return js;
}

}  // namespace

TEST(Normalize, SmallExamples) {
  EXPECT_EQ(normalize(make_jumps({2.5}, 0.0)).weights, std::vector<double>{1.0});
  const SimplexSample s = normalize(make_jumps({3.0, 1.0}, 0.0));
  EXPECT_DOUBLE_EQ(s.weights[0], 0.75);
  EXPECT_DOUBLE_EQ(s.weights[1], 0.25);
  EXPECT_EQ(s.deficit, 0.0);
  EXPECT_THROW(normalize(make_jumps({}, 0.0)), DomainError);
}

TEST(Normalize, DeficitBoundedByTolerance) {
  RandomStream rng(1);
  for (double tol : {1e-2, 1e-4}) {
    for (int rep = 0; rep < 50; ++rep) {
      const SimplexSample s = sample_pk_r(LevyFamily::stable(0.5), 1.0, {tol, 1'000'000}, rng);
      EXPECT_LT(s.deficit, tol / (1.0 - tol));
      expect_simplex(s);
    }
  }
}

TEST(SampleConstructions, SimplexInvariants) {
  RandomStream rng(2);
  for (int rep = 0; rep < 30; ++rep) {
    expect_simplex(sample_pk(LevyFamily::gamma(2.0), 1.5, {}, rng));
    expect_simplex(sample_pk_r(LevyFamily::gen_gamma(0.4), 2.0, {}, rng));
    expect_simplex(sample_pk_r(LevyFamily::trunc_stable(0.5), 0.7, {}, rng));
    expect_simplex(sample_pk_r_subordinated(LevyFamily::stable(0.6, 2.0), 1.5, {1e-3, 1'000'000}, rng));
    expect_simplex(sample_pd_stick(0.5, 1.0, 100, rng));
    expect_simplex(sample_pk_r_gamma_stick(1.0, 2.0, 100, rng));
    expect_simplex(sample_pd_stick_ranked(0.5, 0.0, 5, 100'000'000, rng));
    expect_simplex(sample_pk_r_gamma_stick_ranked(2.0, 1.0, 5, 1'000'000, rng));
    expect_simplex(sample_pd_r_trimmed(0.5, 2, {}, rng));
    expect_simplex(sample_pd_r_nbpp(0.5, 1.5, {}, rng));
    expect_simplex(sample_pd_r_ratio(0.5, 1.5, {}, rng));
  }
}

TEST(SampleConstructions, ProvenanceRecorded) {
  RandomStream rng(42, 9);
  const SimplexSample s = sample_pd_stick(0.5, 1.0, 10, rng);
  EXPECT_EQ(s.provenance.seed, 42u);
  EXPECT_EQ(s.provenance.stream, 9u);
  EXPECT_FALSE(s.provenance.construction.empty());
}

TEST(SizeBiased, TwoAtomFrequency) {
  const JumpSequence js = make_jumps({0.7, 0.3}, 0.0);
  RandomStream rng(3);
  std::vector<double> hit(100000);
  for (auto& h : hit) h = size_biased_permutation(js, 1, rng).picks[0] == 0.7 ? 1.0 : 0.0;
  EXPECT_LT(test::z_score(hit, 0.7), 3.0);
}

TEST(SizeBiased, FullPermutationAndChain) {
  RandomStream rng(4);
  const JumpSequence js = sample_poisson_jumps(LevyFamily::gamma(1.0), 3.0, {}, rng);
  const SizeBiasedDraw d = size_biased_permutation(js, js.size(), rng);
  std::set<std::size_t> seen(d.indices.begin(), d.indices.end());
  EXPECT_EQ(seen.size(), js.size());
  for (std::size_t i = 0; i < d.picks.size(); ++i) EXPECT_EQ(d.picks[i], js.jumps[d.indices[i]]);
  EXPECT_EQ(d.remaining_sums.size(), js.size() + 1);
  for (std::size_t i = 1; i < d.remaining_sums.size(); ++i) {
    EXPECT_LT(d.remaining_sums[i], d.remaining_sums[i - 1]);
    EXPECT_GT(d.residual_fractions[i - 1], 0.0);
    EXPECT_LT(d.residual_fractions[i - 1], 1.0);
  }
  // The tail is never picked, so T_k ends at the phantom mass.
  EXPECT_NEAR(d.remaining_sums.back(), js.tail_bound, 1e-15);
}

TEST(SizeBiased, StickReconstruction) {
  RandomStream rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const JumpSequence js = sample_nb_jumps(LevyFamily::stable(0.5), 1.0, {1e-4, 1'000'000, 5}, rng);
    const SizeBiasedDraw d = size_biased_permutation(js, 5, rng);
    const auto sticks = d.stick_weights();
    for (std::size_t n = 0; n < sticks.size(); ++n) {
      EXPECT_NEAR(sticks[n], d.picks[n] / d.remaining_sums[0], 1e-12);
    }
  }
}

TEST(SizeBiased, ResidualFractionsOfPdAlphaZero) {
  // U_i = T_i / T_{i-1} ~ Beta(iα, 1-α), i = 1, 2.
  RandomStream rng(6);
  const std::size_t n = 20000;
  std::vector<double> u1(n), u2(n), b1(n), b2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const JumpSequence js = sample_poisson_jumps(LevyFamily::stable(0.5), 1.0, {1e-4, 1'000'000, 2}, rng);
    const SizeBiasedDraw d = size_biased_permutation(js, 2, rng);
    u1[i] = d.residual_fractions[0];
    u2[i] = d.residual_fractions[1];
    b1[i] = sample_beta(0.5, 0.5, rng);
    b2[i] = sample_beta(1.0, 0.5, rng);
  }
  EXPECT_GT(ks_two_sample(u1, b1).p_value, 1e-3);
  EXPECT_GT(ks_two_sample(u2, b2).p_value, 1e-3);
}

TEST(SizeBiased, Errors) {
  RandomStream rng(7);
  const JumpSequence js = make_jumps({1.0, 0.5}, 0.1);
  EXPECT_THROW(size_biased_permutation(js, 3, rng), DomainError);
  EXPECT_THROW(size_biased_permutation(js, 0, rng), DomainError);
}

TEST(Stick, TelescopingIsExact) {
  RandomStream rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    const SimplexSample s = sample_pd_stick(0.3, 2.0, 50, rng);
    long double acc = 0.0L;
    for (double w : s.weights) acc += w;
    EXPECT_NEAR(static_cast<double>(acc + s.deficit), 1.0, 1e-14);
  }
}

TEST(Stick, FirstWeightLaw) {
  RandomStream rng(9);
  std::vector<double> v1(20000);
  std::vector<double> b(v1.size());
  for (std::size_t i = 0; i < v1.size(); ++i) {
    v1[i] = sample_pd_stick(0.5, 0.0, 1, rng).weights[0];
    b[i] = 1.0 - sample_beta(0.5, 0.5, rng);
  }
  EXPECT_GT(ks_two_sample(v1, b).p_value, 1e-3);
  std::vector<double> m(100000);
  for (auto& x : m) x = sample_pd_stick(0.5, 1.0, 1, rng).weights[0];
  EXPECT_LT(test::z_score(m, 0.5 / 2.0), 3.0);
}

TEST(Stick, GammaStickConditionalMean) {
  // Given G near 1, U_1 ~ Beta(θ, 1) has mean θ / (θ + 1); the stick sampler
  // draws G first from the stream, so replay it.
  const double theta = 1.5;
  std::vector<double> u;
  for (std::uint64_t s = 0; s < 200000 && u.size() < 20000; ++s) {
    RandomStream probe(10, s);
    const double g = sample_gamma(2.0, probe);
    if (g < 0.9 || g > 1.1) continue;
    RandomStream rng(10, s);
    u.push_back(1.0 - sample_pk_r_gamma_stick(theta, 2.0, 1, rng).weights[0]);
  }
  ASSERT_GT(u.size(), 1000u);
  const MeanEstimate m = mc_mean(u);
  const double lo = 0.9 * theta / (0.9 * theta + 1.0);
  const double hi = 1.1 * theta / (1.1 * theta + 1.0);
  EXPECT_GT(m.mean, lo - 3 * m.std_error);
  EXPECT_LT(m.mean, hi + 3 * m.std_error);
}

TEST(Rank, FlagsOnlyCertifiedOrder) {
  SimplexSample s;
  s.weights = {0.2, 0.5, 0.1};
  s.deficit = 0.2;
  s.order = WeightOrder::size_biased;
  const SimplexSample r = rank(s);
  EXPECT_EQ(r.weights, (std::vector<double>{0.5, 0.2, 0.1}));
  EXPECT_EQ(r.order, WeightOrder::size_biased);
  s.weights = {0.25, 0.4};
  s.deficit = 0.35;
  EXPECT_EQ(rank(s).order, WeightOrder::size_biased);
  s.deficit = 0.05;
  s.weights = {0.35, 0.6};
  EXPECT_EQ(rank(s).order, WeightOrder::ranked);
}

TEST(RankedStick, HeadMatchesJumpConstruction) {
  RandomStream rng(11);
  std::vector<double> a(5000), b(5000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = sample_pd_stick_ranked(0.5, 0.0, 2, 100'000'000, rng).weights[1];
    b[i] = sample_pk(LevyFamily::stable(0.5), 1.0, {}, rng).weights[1];
  }
  EXPECT_GT(ks_two_sample(a, b).p_value, 1e-3);
}

TEST(RankedStick, BudgetExhaustionThrows) {
  RandomStream rng(12);
  EXPECT_THROW(sample_pd_stick_ranked(0.9, 0.0, 50, 60, rng), ConvergenceError);
}

TEST(Trimmed, LargestBelowOneAndRZeroIsPd) {
  RandomStream rng(13);
  std::vector<double> a(5000), b(5000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const SimplexSample s = sample_pd_r_trimmed(0.5, 3, {}, rng);
    EXPECT_LT(s.weights[0], 1.0);
    a[i] = sample_pd_r_trimmed(0.5, 0, {}, rng).weights[0];
    b[i] = sample_pk(LevyFamily::stable(0.5), 1.0, {}, rng).weights[0];
  }
  EXPECT_GT(ks_two_sample(a, b).p_value, 1e-3);
}

TEST(Ratio, StrictlyDecreasingAndFirstIsInverseSum) {
  RandomStream rng(14);
  for (int rep = 0; rep < 50; ++rep) {
    const SimplexSample s = sample_pd_r_ratio(0.5, 2.0, {}, rng);
    for (std::size_t i = 1; i < s.weights.size(); ++i) EXPECT_LT(s.weights[i], s.weights[i - 1]);
    EXPECT_LT(s.weights[0], 1.0);
  }
}

TEST(Ratio, ExpectedTailFormula) {
  // E Σ_{m>n} Π_{i<=m} R_i given Π_{i<=n} R_i = p, by simulation.
  RandomStream rng(15);
  const double alpha = 0.5, r = 1.0, p = 0.3;
  const std::size_t n = 4;
  std::vector<double> tails(20000);
  for (auto& t : tails) {
    double prod = p;
    double sum = 0.0;
    for (std::size_t m = n + 1; m < 200000 && prod > 1e-7 * (sum + p); ++m) {
      prod *= sample_beta((r + static_cast<double>(m)) * alpha, 1.0, rng);
      sum += prod;
    }
    t = sum;
  }
  const MeanEstimate m = mc_mean(tails);
  EXPECT_NEAR(m.mean / ratio_series_expected_tail(alpha, r, n, p), 1.0, 0.02);
}

TEST(Ratio, TruncationErrorOnBudget) {
  RandomStream rng(16);
  EXPECT_THROW(sample_pd_r_ratio(0.5, 1.0, {1e-6, 10}, rng), TruncationError);
}

TEST(Nbpp, NonIntegerRunsAndAtomsBelowOne) {
  RandomStream rng(17);
  for (int rep = 0; rep < 100; ++rep) expect_simplex(sample_pd_r_nbpp(0.5, 1.5, {}, rng));
}
