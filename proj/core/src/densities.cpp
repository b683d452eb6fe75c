#include "nbpk/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nbpk/errors.hpp"
#include "nbpk/special_fn.hpp"
#include "nbpk/stats.hpp"

namespace nbpk {

void DensityContext::validate() const {
  detail::require(r > 0.0 && std::isfinite(r), "DensityContext: r must be positive");
  quad.validate();
}

double log_ascending_factorial(double r, std::size_t n) {
  detail::require(r > 0.0, "ascending_factorial: r must be positive");
  if (n == 0) return 0.0;
  if (n <= 32) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::log(r + static_cast<double>(i));
    return acc;
  }
  return ln_gamma(r + static_cast<double>(n)) - ln_gamma(r);
}

double ascending_factorial(double r, std::size_t n) {
  detail::require(r > 0.0, "ascending_factorial: r must be positive");
  if (n <= 32) {
    double acc = 1.0;
    for (std::size_t i = 0; i < n; ++i) acc *= r + static_cast<double>(i);
    return acc;
  }
  return std::exp(log_ascending_factorial(r, n));
}

double theta_fn(const LevyFamily& fam, double x) { return x * rho(fam, x); }

namespace {

// C of a Stable(1/2, C) family; anything else has no closed-form kernel here.
double half_stable_c(const LevyFamily& fam) {
  if (!fam.is<Stable>() || fam.as<Stable>().alpha != 0.5) {
    throw UnsupportedError("g_r is only available for Stable(alpha = 1/2, C); got " + fam.describe());
  }
  return fam.as<Stable>().c;
}

// log g_r(t) for ρ = C (1/2) x^{-3/2}.
//
// Given the gamma mixing variable v the total is 1/2-stable with Laplace
// transform exp(-v κ √λ), κ = C Γ(1/2), so
//   g_r(t) = κ t^{-3/2} / (2 √π Γ(r)) ∫_0^∞ v^r exp(-v - a v²) dv,  a = κ² / (4t).
// The integral is evaluated after rescaling v by the mode of its integrand.
double log_g_r(double c, double r, double t, const QuadratureSpec& quad) {
  const double kappa = c * std::sqrt(std::numbers::pi);
  const double a = kappa * kappa / (4.0 * t);
  const double mode = 2.0 * r / (1.0 + std::sqrt(1.0 + 8.0 * a * r));
  auto phi_shift = [&](double y) {
    // φ(mode·y) - φ(mode) with φ(v) = r ln v - v - a v²
    return r * std::log(y) - mode * (y - 1.0) - a * mode * mode * (y * y - 1.0);
  };
  EndpointHints hints;
  hints.left_power = r < 1.0 ? 1.0 / r : 1.0;
  hints.tail = TailMap::exponential;
  // Unless the Gaussian factor dominates, the tail decays like e^{-mode·y};
  // a slow rate needs the matching power.
  if (mode < 1.0 && a * mode * mode < 1.0) hints.right_power = std::min(1.0 / mode, 8.0);
  const double integral = quad_adaptive(
      [&](double y) {
        if (y <= 0.0) return 0.0;
        return std::exp(phi_shift(y));
      },
      0.0, std::numeric_limits<double>::infinity(), quad, hints);
  const double phi_mode = r * std::log(mode) - mode - a * mode * mode;
  return std::log(kappa / (2.0 * std::sqrt(std::numbers::pi))) - ln_gamma(r) - 1.5 * std::log(t) + phi_mode +
         std::log(mode) + std::log(integral);
}

}  // namespace

double g_r_density(const DensityContext& ctx, double t) {
  ctx.validate();
  detail::require(t > 0.0, "g_r_density: t must be positive");
  const double c = half_stable_c(ctx.family);
  if (std::isinf(t)) return 0.0;
  return std::exp(log_g_r(c, ctx.r, t, ctx.quad));
}

double g_r_recursion_rhs(const DensityContext& ctx, double t) {
  ctx.validate();
  detail::require(t > 0.0, "g_r_recursion_rhs: t must be positive");
  half_stable_c(ctx.family);
  DensityContext next = ctx;
  next.r = ctx.r + 1.0;
  // Θ(v) ~ v^{-1/2} at the origin; w² substitution smooths it.
  EndpointHints hints;
  hints.left_power = 2.0;
  const double integral = quad_adaptive(
      [&](double v) {
        const double rest = t - v;
        if (v <= 0.0 || rest <= 0.0) return 0.0;
        return theta_fn(ctx.family, v) * g_r_density(next, rest);
      },
      0.0, t, QuadratureSpec{1e-14, 1e-9, 400}, hints);
  return ctx.r * integral / t;
}

double g_r_recursion_residual(const DensityContext& ctx, double t) {
  return g_r_density(ctx, t) - g_r_recursion_rhs(ctx, t);
}

double g_r_laplace_transform(const DensityContext& ctx, double lambda, const QuadratureSpec& outer) {
  ctx.validate();
  detail::require(lambda >= 0.0, "g_r_laplace_transform: lambda must be nonnegative");
  half_stable_c(ctx.family);
  EndpointHints hints;
  hints.right_power = 2.0;  // t^{-3/2} tail under the rational map
  return quad_adaptive(
      [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp(-lambda * t) * g_r_density(ctx, t);
      },
      0.0, std::numeric_limits<double>::infinity(), outer, hints);
}

double joint_remaining_density(const DensityContext& ctx, std::span<const double> ts) {
  ctx.validate();
  detail::require(!ts.empty(), "joint_remaining_density: need at least t_0");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    detail::require(ts[i] > 0.0, "joint_remaining_density: remaining sums must be positive");
    if (i > 0) detail::require(ts[i] < ts[i - 1], "joint_remaining_density: sums must strictly decrease");
  }
  const std::size_t n = ts.size() - 1;
  DensityContext shifted = ctx;
  shifted.r = ctx.r + static_cast<double>(n);
  double log_val = log_ascending_factorial(ctx.r, n);
  double prod = 1.0;
  for (std::size_t i = 0; i < n; ++i) prod *= theta_fn(ctx.family, ts[i] - ts[i + 1]) / ts[i];
  return std::exp(log_val) * g_r_density(shifted, ts[n]) * prod;
}

double transition_density(const DensityContext& ctx, std::size_t n, double t, double t1) {
  ctx.validate();
  detail::require(t > 0.0 && t1 > 0.0 && t1 < t, "transition_density: need 0 < t1 < t");
  DensityContext from = ctx;
  from.r = ctx.r + static_cast<double>(n);
  DensityContext to = ctx;
  to.r = ctx.r + static_cast<double>(n) + 1.0;
  return from.r * theta_fn(ctx.family, t - t1) / t * g_r_density(to, t1) / g_r_density(from, t);
}

double first_pick_density(const DensityContext& ctx, double w, double t) {
  ctx.validate();
  detail::require(w > 0.0 && w < 1.0, "first_pick_density: w must lie in (0, 1)");
  detail::require(t > 0.0, "first_pick_density: t must be positive");
  DensityContext next = ctx;
  next.r = ctx.r + 1.0;
  return ctx.r * theta_fn(ctx.family, t * w) * g_r_density(next, t * (1.0 - w)) / g_r_density(ctx, t);
}

double l_n_constant(double alpha, double c, double r, std::size_t n) {
  detail::require(alpha > 0.0 && alpha < 1.0, "l_n_constant: alpha must lie in (0, 1)");
  detail::require(c > 0.0 && r > 0.0, "l_n_constant: C and r must be positive");
  const double nd = static_cast<double>(n);
  const double log_l = log_ascending_factorial(r, n) + nd * (std::log(c) + ln_gamma(1.0 - alpha)) +
                       ln_gamma(nd * alpha + 1.0) - ln_gamma(nd + 1.0);
  return std::exp(log_l);
}

double marginal_tn_density(double alpha, double c, double r, std::size_t n, double t, const QuadratureSpec& quad) {
  detail::require(t > 0.0, "marginal_tn_density: t must be positive");
  const DensityContext ctx{LevyFamily::stable(alpha, c), r + static_cast<double>(n), quad};
  return l_n_constant(alpha, c, r, n) * std::pow(t, -static_cast<double>(n) * alpha) * g_r_density(ctx, t);
}

double inverse_moment(double alpha, double c, double r, std::size_t n) {
  detail::require(n >= 1, "inverse_moment: n must be >= 1");
  return 1.0 / l_n_constant(alpha, c, r, n);
}

double d_min(std::span<const double> u) {
  detail::require(!u.empty(), "d_min: empty input");
  for (double x : u) detail::require(x > 0.0 && x < 1.0, "d_min: every u_i must lie in (0, 1)");
  // Suffix products Π_{j=i}^n u_j, computed from the right.
  double best = std::numeric_limits<double>::infinity();
  double suffix = 1.0;
  for (std::size_t k = u.size(); k-- > 0;) {
    suffix *= u[k];
    best = std::min(best, suffix / (1.0 - u[k]));
  }
  return best;
}

double k_n_constant(double alpha, std::size_t n) {
  detail::require(alpha > 0.0 && alpha < 1.0, "k_n_constant: alpha must lie in (0, 1)");
  detail::require(n >= 1, "k_n_constant: n must be >= 1");
  const double nd = static_cast<double>(n);
  return std::exp(ln_gamma(nd + 1.0) - nd * ln_gamma(1.0 - alpha) - ln_gamma(nd * alpha + 1.0));
}

ConstantCheck trimmed_constant_check(double alpha, double r, std::size_t n, std::size_t n_samples,
                                     RandomStream& rng, const TruncationSpec& trunc) {
  detail::require(n >= 1, "trimmed_constant_check: n must be >= 1");
  detail::require(n_samples >= 2, "trimmed_constant_check: need at least two samples");
  detail::require(r > 0.0, "trimmed_constant_check: r must be positive");
  const LevyFamily fam = LevyFamily::trunc_stable(alpha);
  const double rf = ascending_factorial(r, n);
  const double power = -static_cast<double>(n) * alpha;
  std::vector<double> values;
  values.reserve(n_samples);
  std::vector<double> u(n);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) u[i] = sample_beta(static_cast<double>(i + 1) * alpha, 1.0 - alpha, rng);
    const double d = d_min(u);
    const JumpSequence js = sample_nb_jumps(fam, r + static_cast<double>(n), trunc, rng);
    const double total = js.kept_total + js.tail_bound;
    values.push_back(total < d ? rf * std::pow(total, power) : 0.0);
  }
  const auto [mean, se] = mc_mean(values);
  return {mean, se, k_n_constant(alpha, n), n_samples};
}

CumulativeDistribution::CumulativeDistribution(std::function<double(double)> density, double lower,
                                               QuadratureSpec quad)
    : density_(std::move(density)), lower_(lower), quad_(quad), last_x_(lower) {}

double CumulativeDistribution::operator()(double x) {
  if (x <= lower_) return 0.0;
  if (x < last_x_) {
    last_x_ = lower_;
    last_value_ = 0.0;
  }
  if (x > last_x_) {
    last_value_ += quad_adaptive(density_, last_x_, x, quad_);
    last_x_ = x;
  }
  return last_value_;
}

}  // namespace nbpk
