#pragma once

#include "nbpk/random.hpp"

namespace nbpk {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// ln Γ(x) for x > 0.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x); x may be +inf.
double reg_lower_gamma(double a, double x);

/// Upper incomplete gamma Γ(s, x) for any real s and x >= 1
/// (Legendre continued fraction). Used where s <= 0.
double upper_gamma_cf(double s, double x);

/// Exponential integral E1(x) = ∫_x^∞ e^{-t}/t dt.
/// Power series for x <= 1, continued fraction above.
double exp_integral_e1(double x);

/// Inverse of E1 on (0, ∞): the unique x > 0 with E1(x) = y.
double inv_e1(double y);

/// Gamma(shape, 1) variate. Marsaglia–Tsang, with the U^{1/a} boost for
/// shape < 1.
double sample_gamma(double shape, RandomStream& rng);

/// log of a Gamma(shape, 1) variate; stays finite for very small shapes
/// where the variate itself underflows.
double sample_log_gamma(double shape, RandomStream& rng);

/// Beta(a, b) variate built from two log-gamma variates.
double sample_beta(double a, double b, RandomStream& rng);

/// Density of the one-sided 1/2-stable law with Laplace transform
/// exp(-c sqrt(λ)): (c / (2 sqrt(π))) t^{-3/2} exp(-c² / (4t)).
double levy_half_density(double t, double c);

/// Distribution function of the same law: erfc(c / (2 sqrt(t))).
double levy_half_cdf(double t, double c);

}  // namespace nbpk
