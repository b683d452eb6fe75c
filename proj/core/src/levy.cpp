#include "nbpk/levy.hpp"

#include <cmath>
#include <sstream>

#include "nbpk/errors.hpp"
#include "nbpk/special_fn.hpp"

namespace nbpk {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_alpha(double alpha) {
  detail::require(alpha > 0.0 && alpha < 1.0, "LevyFamily: alpha must lie in (0, 1)");
}

// x^{1/α} and x^{1-α}, with the α = 1/2 case kept off the pow() path since
// it dominates simulation time.
double pow_inv_alpha(double x, double alpha) { return alpha == 0.5 ? x * x : std::pow(x, 1.0 / alpha); }
double pow_one_minus_alpha(double x, double alpha) {
  return alpha == 0.5 ? std::sqrt(x) : std::pow(x, 1.0 - alpha);
}

double gen_gamma_tail(double alpha, double x) {
  // Λ̄(x) = α/Γ(1-α) · Γ(-α, x) and Γ(-α, x) = (x^{-α}e^{-x} - Γ(1-α, x)) / α.
  const double g1a = std::exp(ln_gamma(1.0 - alpha));
  if (x >= 1.0) return alpha * upper_gamma_cf(-alpha, x) / g1a;
  const double upper = g1a * (1.0 - reg_lower_gamma(1.0 - alpha, x));
  return (std::pow(x, -alpha) * std::exp(-x) - upper) / g1a;
}

double gen_gamma_inv_tail(double alpha, double y) {
  // Newton on u = log x, safeguarded by a bracket; Λ̄ is strictly decreasing.
  const LevyFamily fam = LevyFamily::gen_gamma(alpha);
  const double g1a = std::exp(ln_gamma(1.0 - alpha));
  // Start from the stable approximation Λ̄(x) ≈ x^{-α} / Γ(1-α).
  double u = -std::log(y * g1a) / alpha;
  double lo = u;
  double hi = u;
  while (gen_gamma_tail(alpha, std::exp(lo)) < y) lo -= 1.0;
  while (gen_gamma_tail(alpha, std::exp(hi)) > y) hi += 1.0;
  u = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double x = std::exp(u);
    const double f = gen_gamma_tail(alpha, x) - y;
    if (f > 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    // d Λ̄ / du = -x ρ(x)
    const double deriv = -x * rho(fam, x);
    double next = deriv != 0.0 ? u - f / deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - u) < 1e-13 || hi - lo < 1e-13) return std::exp(next);
    u = next;
  }
  throw ConvergenceError("inv_tail(GenGamma): root search did not converge", std::exp(u), hi - lo);
}

}  // namespace

LevyFamily LevyFamily::stable(double alpha, double c) {
  require_alpha(alpha);
  detail::require(c > 0.0 && std::isfinite(c), "LevyFamily: C must be positive");
  return LevyFamily(Stable{alpha, c});
}

LevyFamily LevyFamily::gamma(double theta) {
  detail::require(theta > 0.0 && std::isfinite(theta), "LevyFamily: theta must be positive");
  return LevyFamily(GammaFam{theta});
}

LevyFamily LevyFamily::trunc_stable(double alpha) {
  require_alpha(alpha);
  return LevyFamily(TruncStable{alpha});
}

LevyFamily LevyFamily::gen_gamma(double alpha) {
  require_alpha(alpha);
  return LevyFamily(GenGamma{alpha});
}

std::string LevyFamily::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Stable& s) { os << "stable(alpha=" << s.alpha << ",C=" << s.c << ")"; },
                 [&](const GammaFam& g) { os << "gamma(theta=" << g.theta << ")"; },
                 [&](const TruncStable& t) { os << "trunc-stable(alpha=" << t.alpha << ")"; },
                 [&](const GenGamma& g) { os << "gen-gamma(alpha=" << g.alpha << ")"; },
             },
             v_);
  return os.str();
}

double rho(const LevyFamily& fam, double x) {
  detail::require(x > 0.0, "rho: x must be positive");
  return std::visit(overloaded{
                        [&](const Stable& s) { return s.c * s.alpha * std::pow(x, -s.alpha - 1.0); },
                        [&](const GammaFam& g) { return g.theta * std::exp(-x) / x; },
                        [&](const TruncStable& t) { return x < 1.0 ? t.alpha * std::pow(x, -t.alpha - 1.0) : 0.0; },
                        [&](const GenGamma& g) {
                          return std::exp(std::log(g.alpha) - ln_gamma(1.0 - g.alpha) -
                                          (g.alpha + 1.0) * std::log(x) - x);
                        },
                    },
                    fam.variant());
}

double tail_mass(const LevyFamily& fam, double x) {
  detail::require(x > 0.0, "tail_mass: x must be positive");
  return std::visit(overloaded{
                        [&](const Stable& s) { return s.c * std::pow(x, -s.alpha); },
                        [&](const GammaFam& g) { return g.theta * exp_integral_e1(x); },
                        [&](const TruncStable& t) { return x < 1.0 ? std::pow(x, -t.alpha) - 1.0 : 0.0; },
                        [&](const GenGamma& g) { return gen_gamma_tail(g.alpha, x); },
                    },
                    fam.variant());
}

double inv_tail(const LevyFamily& fam, double y) {
  detail::require(y > 0.0 && std::isfinite(y), "inv_tail: y must be positive");
  return std::visit(overloaded{
                        [&](const Stable& s) { return pow_inv_alpha(s.c / y, s.alpha); },
                        [&](const GammaFam& g) { return inv_e1(y / g.theta); },
                        [&](const TruncStable& t) { return pow_inv_alpha(1.0 / (1.0 + y), t.alpha); },
                        [&](const GenGamma& g) { return gen_gamma_inv_tail(g.alpha, y); },
                    },
                    fam.variant());
}

double laplace_exponent(const LevyFamily& fam, double lambda) {
  detail::require(lambda >= 0.0, "laplace_exponent: lambda must be nonnegative");
  if (lambda == 0.0) return 0.0;
  return std::visit(
      overloaded{
          [&](const Stable& s) { return s.c * std::exp(ln_gamma(1.0 - s.alpha)) * std::pow(lambda, s.alpha); },
          [&](const GammaFam& g) { return g.theta * std::log1p(lambda); },
          [&](const TruncStable& t) {
            const double a = 1.0 - t.alpha;
            const double lower = std::exp(ln_gamma(a)) * reg_lower_gamma(a, lambda);
            return std::pow(lambda, t.alpha) * lower + std::expm1(-lambda);
          },
          [&](const GenGamma& g) { return std::expm1(g.alpha * std::log1p(lambda)); },
      },
      fam.variant());
}

double small_jump_mean(const LevyFamily& fam, double eps) {
  detail::require(eps > 0.0, "small_jump_mean: eps must be positive");
  return std::visit(
      overloaded{
          [&](const Stable& s) { return s.c * s.alpha * pow_one_minus_alpha(eps, s.alpha) / (1.0 - s.alpha); },
          [&](const GammaFam& g) { return -g.theta * std::expm1(-eps); },
          [&](const TruncStable& t) {
            return t.alpha * pow_one_minus_alpha(std::min(eps, 1.0), t.alpha) / (1.0 - t.alpha);
          },
          [&](const GenGamma& g) { return g.alpha * reg_lower_gamma(1.0 - g.alpha, eps); },
      },
      fam.variant());
}

}  // namespace nbpk
