// Randomised property checks over parameter ranges.
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "nbpk/densities.hpp"
#include "nbpk/levy.hpp"
#include "nbpk/point_process.hpp"
#include "nbpk/random.hpp"
#include "nbpk/simplex.hpp"
#include "nbpk/special_fn.hpp"

using namespace nbpk;

namespace {

LevyFamily random_family(RandomStream& rng) {
  const double a = 0.05 + 0.9 * rng.uniform();
  switch (rng.next_u64() % 4) {
    case 0:
      return LevyFamily::stable(a, 0.1 + 5.0 * rng.uniform());
    case 1:
      return LevyFamily::gamma(0.1 + 5.0 * rng.uniform());
    case 2:
      return LevyFamily::trunc_stable(a);
    default:
      return LevyFamily::gen_gamma(a);
  }
}

}  // namespace

TEST(Property, TailMassDecreasingAndInverted) {
  RandomStream rng(1);
  for (int rep = 0; rep < 300; ++rep) {
    const LevyFamily fam = random_family(rng);
    const double x = std::exp(-8.0 + 9.0 * rng.uniform());
    if (fam.is<TruncStable>() && x >= 1.0) continue;
    const double y = x * (1.0 + 0.01 * rng.uniform_open());
    EXPECT_GT(tail_mass(fam, x), tail_mass(fam, y)) << fam.describe() << ' ' << x;
    EXPECT_NEAR(inv_tail(fam, tail_mass(fam, x)) / x, 1.0, 1e-8) << fam.describe() << ' ' << x;
    EXPECT_GE(small_jump_mean(fam, y), small_jump_mean(fam, x));
  }
}

TEST(Property, JumpSamplesFormValidSimplexPoints) {
  RandomStream rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const LevyFamily fam = random_family(rng);
    const double r = 0.2 + 4.0 * rng.uniform();
    const TruncationSpec trunc{1e-3, 1'000'000};
    const JumpSequence js = [&] {
      try {
        return sample_nb_jumps(fam, r, trunc, rng);
      } catch (const TruncationError& e) {
        return e.partial();  // α near 1 can need more than the budget
      }
    }();
    for (std::size_t i = 1; i < js.size(); ++i) ASSERT_LT(js.jumps[i], js.jumps[i - 1]) << fam.describe();
    const SimplexSample s = normalize(js);
    EXPECT_NEAR(s.total(), 1.0, 1e-9);
    if (js.size() >= 3) {
      const SizeBiasedDraw d = size_biased_permutation(js, 3, rng);
      for (std::size_t i = 1; i < d.remaining_sums.size(); ++i) {
        EXPECT_LT(d.remaining_sums[i], d.remaining_sums[i - 1]);
      }
      const auto sticks = d.stick_weights();
      for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(sticks[i], d.picks[i] / d.remaining_sums[0], 1e-12);
    }
  }
}

TEST(Property, StickSamplesTelescoping) {
  RandomStream rng(3);
  for (int rep = 0; rep < 300; ++rep) {
    const double a = 0.05 + 0.9 * rng.uniform();
    const double theta = 5.0 * rng.uniform();
    const SimplexSample s = sample_pd_stick(a, theta, 1 + rng.next_u64() % 200, rng);
    EXPECT_NEAR(s.total(), 1.0, 1e-12);
    const SimplexSample g = sample_pk_r_gamma_stick(0.1 + 3 * rng.uniform(), 0.1 + 3 * rng.uniform(), 50, rng);
    EXPECT_NEAR(g.total(), 1.0, 1e-12);
  }
}

TEST(Property, DMinPositiveAndBelowEachTerm) {
  RandomStream rng(4);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> u(1 + rng.next_u64() % 6);
    for (auto& x : u) x = rng.uniform_open();
    const double d = d_min(u);
    EXPECT_GT(d, 0.0);
    double suffix = 1.0;
    for (std::size_t k = u.size(); k-- > 0;) {
      suffix *= u[k];
      EXPECT_LE(d, suffix / (1.0 - u[k]) * (1 + 1e-15));
    }
  }
}

TEST(Property, TruncatedStablePicksRespectSupportIndicator) {
  // Picks below 1 force T_n < d(U_1..U_n) for every n.
  RandomStream rng(5);
  for (int rep = 0; rep < 500; ++rep) {
    const double r = 0.3 + 3.0 * rng.uniform();
    const JumpSequence js = sample_nb_jumps(LevyFamily::trunc_stable(0.5), r, {1e-4, 1'000'000, 4}, rng);
    const SizeBiasedDraw d = size_biased_permutation(js, 4, rng);
    for (std::size_t n = 1; n <= 4; ++n) {
      const std::vector<double> u(d.residual_fractions.begin(), d.residual_fractions.begin() + n);
      EXPECT_LT(d.remaining_sums[n], d_min(u));
    }
  }
}

TEST(Property, JointDensityChainRule) {
  // joint(t_0..t_n) = g_r(t_0) Π transition(i, t_i, t_{i+1}).
  RandomStream rng(6);
  for (int rep = 0; rep < 50; ++rep) {
    const double r = 0.5 + 2.0 * rng.uniform();
    const DensityContext ctx{LevyFamily::stable(0.5, 0.5 + rng.uniform()), r};
    std::vector<double> ts{0.2 + 3.0 * rng.uniform()};
    for (int i = 0; i < 3; ++i) ts.push_back(ts.back() * (0.1 + 0.8 * rng.uniform()));
    double chain = g_r_density(ctx, ts[0]);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) chain *= transition_density(ctx, i, ts[i], ts[i + 1]);
    const double joint = joint_remaining_density(ctx, ts);
    EXPECT_NEAR(joint / chain, 1.0, 1e-9);
  }
}

TEST(Property, RandomStreamsReproducible) {
  RandomStream master(7);
  for (std::uint64_t k = 0; k < 20; ++k) {
    RandomStream a = master.split(k);
    RandomStream b = master.split(k);
    RandomStream c = master.split(k + 1);
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_NE(x, c.uniform());
  }
}
