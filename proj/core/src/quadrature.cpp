#include "nbpk/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "nbpk/errors.hpp"

namespace nbpk {

void QuadratureSpec::validate() const {
  detail::require(abs_tol > 0.0, "QuadratureSpec: abs_tol must be positive");
  detail::require(rel_tol > 0.0, "QuadratureSpec: rel_tol must be positive");
  detail::require(max_subdivisions >= 1, "QuadratureSpec: max_subdivisions must be >= 1");
}

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// g is the integrand over w in [lo, hi].
template <class G>
Segment gauss_kronrod(const G& g, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = g(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = g(center - dx);
    f2[j] = g(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::fabs(f1[j] - reskh) + std::fabs(f2[j] - reskh));

  const double result = resk * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {lo, hi, result, err};
}

template <class G>
QuadResult adapt(const G& g, const std::vector<std::pair<double, double>>& pieces, const QuadratureSpec& spec) {
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (const auto& [lo, hi] : pieces) {
    Segment s = gauss_kronrod(g, lo, hi);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }
  int subdivisions = static_cast<int>(pieces.size());
  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)); };
  auto check_finite = [&] {
    if (!std::isfinite(total)) {
      throw ConvergenceError("quad_adaptive: integrand produced a non-finite value", total, total_err);
    }
  };
  check_finite();
  while (total_err > tolerance()) {
    if (subdivisions >= spec.max_subdivisions) {
      throw ConvergenceError("quad_adaptive: tolerance not reached within max_subdivisions", total, total_err);
    }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw ConvergenceError("quad_adaptive: interval collapsed to machine precision", total, total_err);
    }
    heap.pop();
    const Segment left = gauss_kronrod(g, worst.lo, mid);
    const Segment right = gauss_kronrod(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    check_finite();
    if (total_err <= tolerance()) break;
    // Guard against drift in the running sums.
    if (subdivisions % 64 == 0) {
      double v = 0.0;
      double e = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        v += copy.top().value;
        e += copy.top().error;
        copy.pop();
      }
      total = v;
      total_err = e;
    }
  }
  return {total, total_err, subdivisions};
}

}  // namespace

QuadResult quad_adaptive_detailed(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                                  const EndpointHints& hints) {
  spec.validate();
  detail::require(std::isfinite(a), "quad_adaptive: lower limit must be finite");
  detail::require(hints.left_power > 0.0 && hints.right_power > 0.0,
                  "quad_adaptive: endpoint powers must be positive");
  if (b == a) return {};
  if (b < a) {
    // ∫_a^b = -∫_b^a; the hints stay attached to the same endpoints.
    EndpointHints swapped = hints;
    std::swap(swapped.left_power, swapped.right_power);
    QuadResult r = quad_adaptive_detailed(f, b, a, spec, swapped);
    r.value = -r.value;
    return r;
  }
  const bool infinite = std::isinf(b);
  const double width = infinite ? 0.0 : b - a;

  // Integrand in s with both s and 1 - s supplied so the right end keeps
  // full relative precision.
  auto in_s = [&](double s, double one_minus_s) -> double {
    if (!infinite) {
      const double x = s <= 0.5 ? a + width * s : b - width * one_minus_s;
      return width * f(x);
    }
    if (one_minus_s <= 0.0) return 0.0;
    if (hints.tail == TailMap::rational) {
      const double x = a + s / one_minus_s;
      return f(x) / (one_minus_s * one_minus_s);
    }
    const double x = a - std::log(one_minus_s);
    return f(x) / one_minus_s;
  };

  const double p = hints.left_power;
  const double q = hints.right_power;
  if (p == 1.0 && q == 1.0) {
    auto g = [&](double s) { return in_s(s, 1.0 - s); };
    return adapt(g, {{0.0, 0.5}, {0.5, 1.0}}, spec);
  }
  // w in [0, 1] for the left half, w in [1, 2] for the right half (mirrored).
  auto g = [&](double w) -> double {
    if (w <= 1.0) {
      const double wp = std::pow(w, p);
      const double s = 0.5 * wp;
      const double jac = 0.5 * p * (p == 1.0 ? 1.0 : wp / w);
      if (w == 0.0) return 0.0;
      return in_s(s, 1.0 - s) * jac;
    }
    const double v = 2.0 - w;
    if (v <= 0.0) return 0.0;
    const double vq = std::pow(v, q);
    const double one_minus_s = 0.5 * vq;
    const double jac = 0.5 * q * (q == 1.0 ? 1.0 : vq / v);
    return in_s(1.0 - one_minus_s, one_minus_s) * jac;
  };
  return adapt(g, {{0.0, 1.0}, {1.0, 2.0}}, spec);
}

double quad_adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                     const EndpointHints& hints) {
  return quad_adaptive_detailed(f, a, b, spec, hints).value;
}

}  // namespace nbpk
