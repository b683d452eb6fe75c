#include "nbpk/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "nbpk/errors.hpp"
#include "nbpk/special_fn.hpp"

namespace nbpk {

double SimplexSample::total() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0) + deficit;
}

std::vector<double> SizeBiasedDraw::stick_weights() const {
  std::vector<double> out;
  out.reserve(residual_fractions.size());
  double prod = 1.0;
  for (double u : residual_fractions) {
    out.push_back((1.0 - u) * prod);
    prod *= u;
  }
  return out;
}

SimplexSample normalize(const JumpSequence& jumps) {
  detail::require(!jumps.jumps.empty(), "normalize: empty jump sequence");
  detail::require(jumps.kept_total > 0.0, "normalize: kept_total must be positive");
  const double denom = jumps.kept_total + jumps.tail_bound;
  SimplexSample out;
  out.weights.reserve(jumps.jumps.size());
  for (double x : jumps.jumps) out.weights.push_back(x / denom);
  out.deficit = jumps.tail_bound / denom;
  out.order = WeightOrder::ranked;
  return out;
}

namespace {

Provenance make_provenance(std::string construction, std::vector<std::pair<std::string, double>> params,
                           const RandomStream& rng) {
  return Provenance{std::move(construction), std::move(params), rng.seed(), rng.stream_id()};
}

SizeBiasedDraw size_biased_impl(const std::vector<double>& atoms, double phantom, std::size_t k,
                                RandomStream& rng) {
  detail::require(k >= 1, "size_biased_permutation: k must be >= 1");
  detail::require(k <= atoms.size(), "size_biased_permutation: k exceeds the number of atoms");
  SizeBiasedDraw draw;
  std::vector<char> picked(atoms.size(), 0);
  double real_remaining = std::accumulate(atoms.begin(), atoms.end(), 0.0);
  draw.remaining_sums.push_back(real_remaining + phantom);
  for (std::size_t n = 0; n < k; ++n) {
    const double target = rng.uniform() * real_remaining;
    double cum = 0.0;
    std::size_t chosen = atoms.size();
    std::size_t last_unpicked = atoms.size();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (picked[i]) continue;
      last_unpicked = i;
      cum += atoms[i];
      if (cum > target) {
        chosen = i;
        break;
      }
    }
    if (chosen == atoms.size()) chosen = last_unpicked;  // rounding at the top end
    picked[chosen] = 1;
    draw.picks.push_back(atoms[chosen]);
    draw.indices.push_back(chosen);
    // Recompute rather than subtract so the chain stays nonnegative.
    real_remaining = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (!picked[i]) real_remaining += atoms[i];
    }
    const double t_prev = draw.remaining_sums.back();
    const double t_next = real_remaining + phantom;
    draw.remaining_sums.push_back(t_next);
    draw.residual_fractions.push_back(t_next / t_prev);
  }
  return draw;
}

// Generic stick-breaking loop; `next_u` draws U_i for i = 1, 2, ...
SimplexSample break_sticks(std::size_t n_terms, const std::function<double(std::size_t)>& next_u) {
  SimplexSample out;
  out.order = WeightOrder::size_biased;
  out.weights.reserve(n_terms);
  double prod = 1.0;
  for (std::size_t i = 1; i <= n_terms; ++i) {
    const double u = next_u(i);
    const double w = (1.0 - u) * prod;
    if (!(w > 0.0)) break;
    out.weights.push_back(w);
    prod *= u;
    if (!(prod > 0.0)) break;
  }
  out.deficit = prod;
  return out;
}

SimplexSample break_sticks_ranked(std::size_t k, std::size_t max_terms,
                                  const std::function<double(std::size_t)>& next_u) {
  detail::require(k >= 1, "stick sampler: k must be >= 1");
  detail::require(max_terms >= k, "stick sampler: max_terms must be >= k");
  std::vector<double> w;
  double prod = 1.0;
  // Min-heap of the current k largest weights.
  std::vector<double> top;
  auto kth = [&] { return top.size() < k ? 0.0 : top.front(); };
  for (std::size_t i = 1; i <= max_terms; ++i) {
    const double u = next_u(i);
    const double x = (1.0 - u) * prod;
    prod *= u;
    if (x > 0.0) {
      w.push_back(x);
      if (top.size() < k) {
        top.push_back(x);
        std::push_heap(top.begin(), top.end(), std::greater<>());
      } else if (x > top.front()) {
        std::pop_heap(top.begin(), top.end(), std::greater<>());
        top.back() = x;
        std::push_heap(top.begin(), top.end(), std::greater<>());
      }
    }
    if (top.size() == k && prod < kth()) break;
    if (!(prod > 0.0)) break;
    if (i == max_terms) {
      throw ConvergenceError("stick sampler: residual did not fall below the k-th weight within max_terms",
                             prod, prod);
    }
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  const std::size_t keep = std::min(k, w.size());
  SimplexSample out;
  out.weights.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(keep));
  out.deficit = std::accumulate(w.begin() + static_cast<std::ptrdiff_t>(keep), w.end(), 0.0) + prod;
  out.order = WeightOrder::ranked;
  return out;
}

void require_pd_params(double alpha, double theta) {
  detail::require(alpha > 0.0 && alpha < 1.0, "PD(alpha, theta): alpha must lie in (0, 1)");
  detail::require(theta >= 0.0 && std::isfinite(theta), "PD(alpha, theta): theta must be >= 0");
}

}  // namespace

SimplexSample sample_pk(const LevyFamily& fam, double v, const TruncationSpec& trunc, RandomStream& rng) {
  const std::uint64_t seed = rng.seed();
  const std::uint64_t stream = rng.stream_id();
  SimplexSample out = normalize(sample_poisson_jumps(fam, v, trunc, rng));
  out.provenance = {"pk:" + fam.describe(), {{"v", v}, {"tol", trunc.tol}}, seed, stream};
  return out;
}

SimplexSample sample_pk_r(const LevyFamily& fam, double r, const TruncationSpec& trunc, RandomStream& rng) {
  const std::uint64_t seed = rng.seed();
  const std::uint64_t stream = rng.stream_id();
  SimplexSample out = normalize(sample_nb_jumps(fam, r, trunc, rng));
  out.provenance = {"pk_r:" + fam.describe(), {{"r", r}, {"tol", trunc.tol}}, seed, stream};
  return out;
}

SimplexSample sample_pk_r_subordinated(const LevyFamily& fam, double r, const TruncationSpec& trunc,
                                       RandomStream& rng) {
  const std::uint64_t seed = rng.seed();
  const std::uint64_t stream = rng.stream_id();
  SimplexSample out = normalize(sample_subordinated_jumps(fam, r, trunc, rng));
  out.provenance = {"pk_r_subordinated:" + fam.describe(), {{"r", r}, {"tol", trunc.tol}}, seed, stream};
  return out;
}

SizeBiasedDraw size_biased_permutation(const SimplexSample& source, std::size_t k, RandomStream& rng) {
  return size_biased_impl(source.weights, source.deficit, k, rng);
}

SizeBiasedDraw size_biased_permutation(const JumpSequence& source, std::size_t k, RandomStream& rng) {
  return size_biased_impl(source.jumps, source.tail_bound, k, rng);
}

SimplexSample sample_pd_stick(double alpha, double theta, std::size_t n_terms, RandomStream& rng) {
  require_pd_params(alpha, theta);
  detail::require(n_terms >= 1, "sample_pd_stick: n_terms must be >= 1");
  auto prov = make_provenance("pd_stick", {{"alpha", alpha}, {"theta", theta}}, rng);
  SimplexSample out = break_sticks(n_terms, [&](std::size_t i) {
    return sample_beta(theta + static_cast<double>(i) * alpha, 1.0 - alpha, rng);
  });
  out.provenance = std::move(prov);
  return out;
}

SimplexSample sample_pk_r_gamma_stick(double theta, double r, std::size_t n_terms, RandomStream& rng) {
  detail::require(theta > 0.0 && r > 0.0, "sample_pk_r_gamma_stick: theta and r must be positive");
  detail::require(n_terms >= 1, "sample_pk_r_gamma_stick: n_terms must be >= 1");
  auto prov = make_provenance("pk_r_gamma_stick", {{"theta", theta}, {"r", r}}, rng);
  const double g = sample_gamma(r, rng);
  SimplexSample out = break_sticks(n_terms, [&](std::size_t) { return sample_beta(g * theta, 1.0, rng); });
  out.provenance = std::move(prov);
  out.provenance.params.emplace_back("G", g);
  return out;
}

SimplexSample rank(const SimplexSample& sample) {
  SimplexSample out = sample;
  std::sort(out.weights.begin(), out.weights.end(), std::greater<>());
  const bool exact = out.weights.empty() || out.deficit < out.weights.back();
  out.order = exact ? WeightOrder::ranked : WeightOrder::size_biased;
  return out;
}

SimplexSample sample_pd_stick_ranked(double alpha, double theta, std::size_t k, std::size_t max_terms,
                                     RandomStream& rng) {
  require_pd_params(alpha, theta);
  auto prov = make_provenance("pd_stick_ranked", {{"alpha", alpha}, {"theta", theta}}, rng);
  SimplexSample out = break_sticks_ranked(k, max_terms, [&](std::size_t i) {
    return sample_beta(theta + static_cast<double>(i) * alpha, 1.0 - alpha, rng);
  });
  out.provenance = std::move(prov);
  return out;
}

SimplexSample sample_pk_r_gamma_stick_ranked(double theta, double r, std::size_t k, std::size_t max_terms,
                                             RandomStream& rng) {
  detail::require(theta > 0.0 && r > 0.0, "sample_pk_r_gamma_stick_ranked: theta and r must be positive");
  auto prov = make_provenance("pk_r_gamma_stick_ranked", {{"theta", theta}, {"r", r}}, rng);
  const double g = sample_gamma(r, rng);
  SimplexSample out =
      break_sticks_ranked(k, max_terms, [&](std::size_t) { return sample_beta(g * theta, 1.0, rng); });
  out.provenance = std::move(prov);
  out.provenance.params.emplace_back("G", g);
  return out;
}

SimplexSample sample_pd_r_trimmed(double alpha, std::size_t r, const TruncationSpec& trunc, RandomStream& rng) {
  detail::require(alpha > 0.0 && alpha < 1.0, "sample_pd_r_trimmed: alpha must lie in (0, 1)");
  auto prov = make_provenance("pd_r_trimmed", {{"alpha", alpha}, {"r", static_cast<double>(r)}}, rng);
  JumpSequence js = sample_poisson_jumps(LevyFamily::stable(alpha, 1.0), 1.0, trunc, rng, r);
  if (js.jumps.size() <= r) {
    throw TruncationError("sample_pd_r_trimmed: fewer than r + 1 jumps simulated", js);
  }
  js.jumps.erase(js.jumps.begin(), js.jumps.begin() + static_cast<std::ptrdiff_t>(r));
  js.kept_total = std::accumulate(js.jumps.begin(), js.jumps.end(), 0.0);
  SimplexSample out = normalize(js);
  out.provenance = std::move(prov);
  return out;
}

SimplexSample sample_pd_r_nbpp(double alpha, double r, const TruncationSpec& trunc, RandomStream& rng) {
  auto prov = make_provenance("pd_r_nbpp", {{"alpha", alpha}, {"r", r}}, rng);
  SimplexSample out = normalize(sample_nb_jumps(LevyFamily::trunc_stable(alpha), r, trunc, rng));
  out.provenance = std::move(prov);
  return out;
}

double ratio_series_expected_tail(double alpha, double r, std::size_t n, double product) {
  return product * (r + static_cast<double>(n) + 1.0) * alpha / (1.0 - alpha);
}

SimplexSample sample_pd_r_ratio(double alpha, double r, const TruncationSpec& trunc, RandomStream& rng) {
  detail::require(alpha > 0.0 && alpha < 1.0, "sample_pd_r_ratio: alpha must lie in (0, 1)");
  detail::require(r > 0.0 && std::isfinite(r), "sample_pd_r_ratio: r must be positive");
  trunc.validate();
  auto prov = make_provenance("pd_r_ratio", {{"alpha", alpha}, {"r", r}}, rng);
  std::vector<double> products{1.0};
  double sum = 1.0;
  double prod = 1.0;
  double tail = ratio_series_expected_tail(alpha, r, 0, prod);
  for (std::size_t n = 1; tail > trunc.tol * sum; ++n) {
    if (products.size() >= trunc.max_jumps) {
      JumpSequence partial{LevyFamily::stable(alpha, 1.0), 1.0, products, sum, tail, 0.0};
      throw TruncationError("sample_pd_r_ratio: max terms reached before the tail tolerance", partial);
    }
    // R_n ~ Beta((r + n)α, 1) = U^{1 / ((r + n)α)}
    const double log_r = std::log(rng.uniform_open()) / ((r + static_cast<double>(n)) * alpha);
    prod *= std::exp(log_r);
    if (!(prod > 0.0)) {
      tail = 0.0;
      break;
    }
    products.push_back(prod);
    sum += prod;
    tail = ratio_series_expected_tail(alpha, r, n, prod);
  }
  SimplexSample out;
  const double denom = sum + tail;
  out.weights.reserve(products.size());
  for (double p : products) out.weights.push_back(p / denom);
  out.deficit = tail / denom;
  out.order = WeightOrder::ranked;
  out.provenance = std::move(prov);
  return out;
}

}  // namespace nbpk
