#include "nbpk/special_fn.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nbpk/errors.hpp"

namespace nbpk {

double ln_gamma(double x) {
  detail::require(x > 0.0 && std::isfinite(x), "ln_gamma: x must be positive and finite");
  return boost::math::lgamma(x);
}

double reg_lower_gamma(double a, double x) {
  detail::require(a > 0.0 && std::isfinite(a), "reg_lower_gamma: a must be positive");
  detail::require(x >= 0.0, "reg_lower_gamma: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double upper_gamma_cf(double s, double x) {
  detail::require(x >= 1.0 && std::isfinite(x), "upper_gamma_cf: x must be >= 1");
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 4.0 * std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return std::exp(-x + s * std::log(x)) * h;
  }
  throw ConvergenceError("upper_gamma_cf: continued fraction did not converge",
                         std::exp(-x + s * std::log(x)) * h, std::numeric_limits<double>::infinity());
}

double exp_integral_e1(double x) {
  detail::require(x > 0.0, "exp_integral_e1: x must be positive");
  if (std::isinf(x)) return 0.0;
  constexpr double kEps = 1e-17;
  if (x <= 1.0) {
    // E1(x) = -γ - ln x - Σ_{k>=1} (-x)^k / (k k!)
    double sum = 0.0;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::fabs(add) < kEps * std::fabs(sum)) break;
    }
    return -kEulerGamma - std::log(x) - sum;
  }
  // Modified Lentz on the continued fraction e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))).
  constexpr double kTiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h * std::exp(-x);
}

double inv_e1(double y) {
  detail::require(y > 0.0 && std::isfinite(y), "inv_e1: y must be positive and finite");
  // For tiny x, E1(x) = -γ - ln x + x + O(x²); once x < 1e-17 the linear term
  // is below double resolution.
  if (y > 40.0) return std::exp(-y - kEulerGamma);

  double x = y > 1.0 ? std::exp(-y - kEulerGamma) : [&] {
    const double l = -std::log(y);
    return std::max(l - std::log(std::max(l, 1.0)), 0.5);
  }();

  // Bracket lo < root < hi: E1(lo) > y > E1(hi).
  double lo = x;
  double hi = x;
  while (exp_integral_e1(lo) < y) lo *= 0.5;
  while (exp_integral_e1(hi) > y) hi *= 2.0;

  for (int it = 0; it < 200; ++it) {
    const double f = exp_integral_e1(x) - y;
    if (f > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    // dE1/dx = -e^{-x}/x
    double next = x + f * x * std::exp(x);
    if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
    if (std::fabs(next - x) <= 1e-15 * x) return next;
    x = next;
    if ((hi - lo) <= 1e-15 * lo) return x;
  }
  throw ConvergenceError("inv_e1: root search did not converge", x, hi - lo);
}

namespace {

// Marsaglia & Tsang (2000), shape >= 1.
double marsaglia_tsang(double shape, RandomStream& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double sample_gamma(double shape, RandomStream& rng) {
  detail::require(shape > 0.0 && std::isfinite(shape), "sample_gamma: shape must be positive");
  if (shape >= 1.0) return marsaglia_tsang(shape, rng);
  return std::exp(sample_log_gamma(shape, rng));
}

double sample_log_gamma(double shape, RandomStream& rng) {
  detail::require(shape > 0.0 && std::isfinite(shape), "sample_log_gamma: shape must be positive");
  if (shape >= 1.0) return std::log(marsaglia_tsang(shape, rng));
  // G(a) = G(a + 1) U^{1/a}
  const double g = marsaglia_tsang(shape + 1.0, rng);
  return std::log(g) + std::log(rng.uniform_open()) / shape;
}

double sample_beta(double a, double b, RandomStream& rng) {
  detail::require(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b),
                  "sample_beta: parameters must be positive");
  if (b == 1.0) {
    // Inverse CDF: U^{1/a}.
    const double x = std::exp(std::log(rng.uniform_open()) / a);
    return std::min(x, std::nextafter(1.0, 0.0));
  }
  const double lx = sample_log_gamma(a, rng);
  const double ly = sample_log_gamma(b, rng);
  // X / (X + Y) = 1 / (1 + exp(ly - lx)), computed on the stable side.
  const double diff = ly - lx;
  double x;
  if (diff > 0.0) {
    const double e = std::exp(-diff);
    x = e / (1.0 + e);
  } else {
    x = 1.0 / (1.0 + std::exp(diff));
  }
  return std::clamp(x, std::numeric_limits<double>::denorm_min(), std::nextafter(1.0, 0.0));
}

double levy_half_density(double t, double c) {
  detail::require(t > 0.0 && c > 0.0, "levy_half_density: t and c must be positive");
  const double log_val = std::log(c / (2.0 * std::sqrt(std::numbers::pi))) - 1.5 * std::log(t) -
                         c * c / (4.0 * t);
  return std::exp(log_val);
}

double levy_half_cdf(double t, double c) {
  detail::require(t > 0.0 && c > 0.0, "levy_half_cdf: t and c must be positive");
  return std::erfc(c / (2.0 * std::sqrt(t)));
}

}  // namespace nbpk
