#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nbpk/errors.hpp"
#include "nbpk/random.hpp"
#include "nbpk/stats.hpp"

using namespace nbpk;

namespace {

std::vector<double> uniforms(RandomStream& rng, std::size_t n, double shift = 0.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform() + shift;
  return v;
}

}  // namespace

TEST(KolmogorovQ, ReferenceValues) {
  // Q(λ) = 2 Σ (-1)^{j-1} e^{-2 j² λ²}
  EXPECT_NEAR(kolmogorov_q(1.0), 0.26999967167735456, 1e-12);
  EXPECT_NEAR(kolmogorov_q(1.36), 0.049485876755377876, 1e-12);
  EXPECT_NEAR(kolmogorov_q(0.5), 0.9639452436648751, 1e-12);
  EXPECT_NEAR(kolmogorov_q(1.1799999), kolmogorov_q(1.1800001), 1e-6);  // branch switch is continuous
  EXPECT_EQ(kolmogorov_q(0.0), 1.0);
}

TEST(KsTwoSample, IdenticalVectors) {
  RandomStream rng(1);
  const auto a = uniforms(rng, 500);
  const KsResult r = ks_two_sample(a, a);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(KsTwoSample, DetectsShift) {
  RandomStream rng(2);
  EXPECT_LT(ks_two_sample(uniforms(rng, 10000), uniforms(rng, 10000, 0.5)).p_value, 1e-6);
}

TEST(KsTwoSample, CalibratedUnderNull) {
  RandomStream rng(3);
  int rejections = 0;
  double below_tenth = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const double p = ks_two_sample(uniforms(rng, 10000), uniforms(rng, 10000)).p_value;
    rejections += p < 1e-3;
    below_tenth += p < 0.1;
  }
  EXPECT_LT(rejections / 200.0, 0.005 + 1e-12);
  // Rejection rate at level 0.1 within binomial 3 SE.
  EXPECT_LT(std::abs(below_tenth / 200.0 - 0.1), 3.0 * std::sqrt(0.1 * 0.9 / 200.0));
}

TEST(KsTwoSample, RejectsSmallSamples) {
  std::vector<double> a(50, 0.0), b(500, 0.0);
  EXPECT_THROW(ks_two_sample(a, b), DomainError);
}

TEST(KsWeighted, UnitWeightsMatchUnweighted) {
  RandomStream rng(4);
  const auto a = uniforms(rng, 1000);
  const auto b = uniforms(rng, 700, 0.05);
  const std::vector<double> w(b.size(), 2.5);
  const KsResult x = ks_two_sample(a, b);
  const KsResult y = ks_two_sample_weighted(a, b, w);
  EXPECT_NEAR(x.statistic, y.statistic, 1e-14);
  EXPECT_NEAR(x.p_value, y.p_value, 1e-12);
}

TEST(KsWeighted, TiltRecoversTarget) {
  // b ~ U(0,1) tilted by 2x has density 2x, i.e. the law of sqrt(U).
  RandomStream rng(5);
  std::vector<double> a(20000), b(20000), w(20000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = std::sqrt(rng.uniform());
    b[i] = rng.uniform();
    w[i] = 2.0 * b[i];
  }
  EXPECT_GT(ks_two_sample_weighted(a, b, w).p_value, 1e-3);
  EXPECT_LT(ks_two_sample(a, b).p_value, 1e-6);
}

TEST(KsOneSample, CalibratedExponential) {
  RandomStream rng(6);
  int rejections = 0;
  double below_tenth = 0;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> x(2000);
    for (auto& v : x) v = rng.exponential();
    const double p = ks_one_sample(x, [](double t) { return 1.0 - std::exp(-t); }).p_value;
    rejections += p < 1e-3;
    below_tenth += p < 0.1;
  }
  EXPECT_LE(rejections, 1);
  EXPECT_LT(std::abs(below_tenth / 200.0 - 0.1), 3.0 * std::sqrt(0.1 * 0.9 / 200.0));
}

TEST(KsOneSample, NonMonotoneCdfThrows) {
  RandomStream rng(7);
  const auto x = uniforms(rng, 200);
  EXPECT_THROW(ks_one_sample(x, [](double t) { return 1.0 - t; }), DomainError);
}

TEST(McMean, Examples) {
  const std::vector<double> c(10, 3.0);
  EXPECT_EQ(mc_mean(c).mean, 3.0);
  EXPECT_EQ(mc_mean(c).std_error, 0.0);
  std::vector<double> alt(100);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 ? 1.0 : -1.0;
  EXPECT_EQ(mc_mean(alt).mean, 0.0);
  RandomStream rng(8);
  const MeanEstimate m = mc_mean(uniforms(rng, 100000));
  EXPECT_LT(std::abs(m.mean - 0.5), 3.0 * m.std_error);
  EXPECT_NEAR(m.std_error, std::sqrt(1.0 / 12.0 / 100000.0), 1e-5);
  EXPECT_THROW(mc_mean(std::vector<double>{1.0}), DomainError);
}

TEST(ChiSquare, UniformCounts) {
  const std::vector<double> obs{100, 100, 100, 100};
  const std::vector<double> p{1, 1, 1, 1};
  const ChiSquareResult r = chi_square_gof(obs, p);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.dof, 3u);
  EXPECT_NEAR(r.p_value, 1.0, 1e-15);
  // χ²_1 at 3.841459 has upper tail 0.05.
  const std::vector<double> obs2{100.0 + std::sqrt(3.841458820694124 * 50.0), 100.0 - std::sqrt(3.841458820694124 * 50.0)};
  EXPECT_NEAR(chi_square_gof(obs2, std::vector<double>{1, 1}).p_value, 0.05, 1e-9);
}
