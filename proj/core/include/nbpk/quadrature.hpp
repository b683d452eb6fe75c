#pragma once

#include <functional>

namespace nbpk {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 500;

  void validate() const;
};

/// How an infinite upper limit is folded onto [0, 1).
///
///  - rational:    x = a + s / (1 - s), suited to algebraic tails
///  - exponential: x = a - log(1 - s), suited to exponentially decaying tails
enum class TailMap { rational, exponential };

/// Endpoint substitutions declared by the caller.
///
/// After the range is mapped onto s in [0, 1], the half [0, 1/2] is
/// integrated through s = w^p / 2 and the half [1/2, 1] through
/// s = 1 - w^q / 2 with p = left_power and q = right_power. An integrand that
/// behaves like s^{-β} near 0 becomes smooth in w when p ≈ 1 / (1 - β);
/// p = 2 removes an inverse square-root singularity. With an infinite upper
/// limit and the rational map, a tail x^{-γ} turns into (1-s)^{γ-2}, so
/// right_power = 2 handles the x^{-3/2} tails of one-sided 1/2-stable laws.
struct EndpointHints {
  double left_power = 1.0;
  double right_power = 1.0;
  TailMap tail = TailMap::rational;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss–Kronrod integration of f over [a, b],
/// b may be +infinity. Throws ConvergenceError (carrying the best estimate)
/// when max_subdivisions is exhausted.
QuadResult quad_adaptive_detailed(const Integrand& f, double a, double b,
                                  const QuadratureSpec& spec = {},
                                  const EndpointHints& hints = {});

double quad_adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec = {},
                     const EndpointHints& hints = {});

}  // namespace nbpk
