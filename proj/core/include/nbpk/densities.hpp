#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "nbpk/levy.hpp"
#include "nbpk/point_process.hpp"
#include "nbpk/quadrature.hpp"
#include "nbpk/random.hpp"

namespace nbpk {

/// Inputs shared by the remaining-sum densities of BN(r, ρ).
///
/// Pointwise evaluation of g_r (the density of the total T of BN(r, ρ)) is
/// available for Stable(1/2, C), where the Poisson total has the closed-form
/// Lévy density and g_r is a one-dimensional gamma mixture of it. Every other
/// family raises UnsupportedError from the g-based operations.
struct DensityContext {
  LevyFamily family;
  double r;
  QuadratureSpec quad{1e-14, 1e-10, 200};

  void validate() const;
};

/// r^{[n]} = r (r + 1) ... (r + n - 1), r^{[0]} = 1.
double ascending_factorial(double r, std::size_t n);
double log_ascending_factorial(double r, std::size_t n);

/// Θ(x) = x ρ(x).
double theta_fn(const LevyFamily& fam, double x);

/// g_r(t), the density of the total of BN(r, ρ) for ρ = ρ_{1/2}.
double g_r_density(const DensityContext& ctx, double t);

/// r ∫_0^t ρ(v) g_{r+1}(t - v) (v / t) dv.
double g_r_recursion_rhs(const DensityContext& ctx, double t);

/// g_r(t) minus the right-hand side of the integral recursion; zero in exact
/// arithmetic.
double g_r_recursion_residual(const DensityContext& ctx, double t);

/// ∫_0^∞ e^{-λt} g_r(t) dt by quadrature.
double g_r_laplace_transform(const DensityContext& ctx, double lambda, const QuadratureSpec& outer = {});

/// Joint density of (T_0, ..., T_n) at t_0 > t_1 > ... > t_n > 0:
/// r^{[n]} g_{r+n}(t_n) Π_{i<n} Θ(t_i - t_{i+1}) / t_i.
double joint_remaining_density(const DensityContext& ctx, std::span<const double> ts);

/// Density of T_{n+1} = t1 given T_n = t:
/// (r + n) Θ(t - t1) / t · g_{r+n+1}(t1) / g_{r+n}(t), 0 < t1 < t.
double transition_density(const DensityContext& ctx, std::size_t n, double t, double t1);

/// Density of the first size-biased pick W̃_1 = w given T = t:
/// r · t w ρ(t w) · g_{r+1}(t (1 - w)) / g_r(t).
double first_pick_density(const DensityContext& ctx, double w, double t);

/// L_n = r^{[n]} (C Γ(1-α))^n Γ(nα + 1) / Γ(n + 1).
double l_n_constant(double alpha, double c, double r, std::size_t n);

/// Density of T_n under BN(r, ρ_α): L_n t^{-nα} g_{r+n}(t); needs α = 1/2.
double marginal_tn_density(double alpha, double c, double r, std::size_t n, double t,
                           const QuadratureSpec& quad = {1e-14, 1e-10, 200});

/// E[T^{-nα}] for T the total of BN(r + n, ρ_α); equals 1 / L_n.
double inverse_moment(double alpha, double c, double r, std::size_t n);

/// d(u_1..u_n) = min_i Π_{j=i}^n u_j / (1 - u_i).
double d_min(std::span<const double> u);

/// K_n = Γ(n + 1) / (Γ(1-α)^n Γ(nα + 1)).
double k_n_constant(double alpha, std::size_t n);

struct ConstantCheck {
  double estimate = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  std::size_t n_samples = 0;
};

/// Monte Carlo estimate of r^{[n]} E[T^{-nα} 1{T < d(U_1..U_n)}] with
/// U_i ~ Beta(iα, 1 - α) independent and T the total of BN(r + n, ρ*_α),
/// against the target K_n.
ConstantCheck trimmed_constant_check(double alpha, double r, std::size_t n, std::size_t n_samples,
                                     RandomStream& rng, const TruncationSpec& trunc = {});

/// Distribution function obtained by integrating a density from `lower`.
/// Evaluation at nondecreasing points reuses the previous value, so a sorted
/// sweep costs one short integral per point.
class CumulativeDistribution {
 public:
  CumulativeDistribution(std::function<double(double)> density, double lower, QuadratureSpec quad = {});

  double operator()(double x);

 private:
  std::function<double(double)> density_;
  double lower_;
  QuadratureSpec quad_;
  double last_x_;
  double last_value_ = 0.0;
};

}  // namespace nbpk
