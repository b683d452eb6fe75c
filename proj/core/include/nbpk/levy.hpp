#pragma once

#include <string>
#include <variant>

namespace nbpk {

/// ρ(x) = C α x^{-α-1}, x > 0.
struct Stable {
  double alpha;
  double c = 1.0;
};

/// ρ(x) = θ e^{-x} / x, x > 0 (gamma subordinator).
struct GammaFam {
  double theta;
};

/// ρ(x) = α x^{-α-1} on 0 < x < 1 (stable intensity truncated at 1, C = 1).
struct TruncStable {
  double alpha;
};

/// ρ(x) = α / Γ(1-α) x^{-α-1} e^{-x}, x > 0 (generalised gamma subordinator).
struct GenGamma {
  double alpha;
};

/// A Lévy density from one of the four supported families. Construction
/// validates the parameters, so every LevyFamily value is well formed.
class LevyFamily {
 public:
  using Variant = std::variant<Stable, GammaFam, TruncStable, GenGamma>;

  static LevyFamily stable(double alpha, double c = 1.0);
  static LevyFamily gamma(double theta);
  static LevyFamily trunc_stable(double alpha);
  static LevyFamily gen_gamma(double alpha);

  const Variant& variant() const noexcept { return v_; }

  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(v_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(v_);
  }

  std::string describe() const;

 private:
  explicit LevyFamily(Variant v) : v_(v) {}
  Variant v_;
};

double rho(const LevyFamily& fam, double x);

/// Λ̄(x) = ∫_x^∞ ρ(u) du.
double tail_mass(const LevyFamily& fam, double x);

/// Unique x with Λ̄(x) = y. For TruncStable the result lies in (0, 1).
double inv_tail(const LevyFamily& fam, double y);

/// ψ(λ) = ∫_0^∞ (1 - e^{-λx}) ρ(x) dx.
double laplace_exponent(const LevyFamily& fam, double lambda);

/// m(ε) = ∫_0^ε x ρ(x) dx, the expected mass of jumps below ε per unit
/// intensity.
double small_jump_mean(const LevyFamily& fam, double eps);

}  // namespace nbpk
