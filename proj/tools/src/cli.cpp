#include "nbpk_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "nbpk/densities.hpp"
#include "nbpk/errors.hpp"
#include "nbpk/levy.hpp"
#include "nbpk/point_process.hpp"
#include "nbpk/random.hpp"
#include "nbpk/simplex.hpp"
#include "nbpk/verification.hpp"
#include "nbpk/version.hpp"

namespace nbpk::cli {

namespace {

using nlohmann::json;

// Parameter combination that is well-formed syntactically but not meaningful.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string family = "stable";
  std::string construction = "jump";
  double alpha = 0.5;
  double theta = 1.0;
  double c = 1.0;
  double r = 1.0;
  std::size_t n_weights = 10;
  std::size_t n_samples = 100;
  double tol = 1e-4;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string output;

  // density
  std::string density = "g_r";
  double t = 1.0;
  std::size_t n = 1;
  double from = 0.05;
  double to = 5.0;
  std::size_t points = 100;

  // verify
  std::string suite = "all";
  bool list = false;
  double sample_scale = 1.0;

  // zipf
  std::size_t max_rank = 100;
};

std::string fmt_g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

LevyFamily make_family(const RunConfig& cfg) {
  if (cfg.family == "stable") return LevyFamily::stable(cfg.alpha, cfg.c);
  if (cfg.family == "gamma") return LevyFamily::gamma(cfg.theta);
  if (cfg.family == "trunc-stable") return LevyFamily::trunc_stable(cfg.alpha);
  if (cfg.family == "gen-gamma") return LevyFamily::gen_gamma(cfg.alpha);
  throw UsageError("unknown family: " + cfg.family);
}

void validate_common(const RunConfig& cfg) {
  if (cfg.family != "gamma" && !(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  if (!(cfg.theta > 0.0)) throw UsageError("--theta must be positive");
  if (!(cfg.c > 0.0)) throw UsageError("--c must be positive");
  if (!(cfg.r > 0.0) || !std::isfinite(cfg.r)) throw UsageError("--r must be positive");
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) throw UsageError("--tol must lie in (0, 1)");
  if (cfg.n_samples < 1) throw UsageError("--n-samples must be at least 1");
}

json meta_json(const RunConfig& cfg) {
  return json{{"version", kVersion}, {"seed", cfg.seed}, {"command", cfg.command}};
}

std::string meta_line(const RunConfig& cfg, const std::string& extra) {
  return "# nbpk " + std::string(kVersion) + " seed=" + std::to_string(cfg.seed) + " command=" + cfg.command +
         (extra.empty() ? "" : " " + extra);
}

// ---------------------------------------------------------------------------
// sample

using Sampler = std::function<SimplexSample(RandomStream&)>;

bool is_integer(double x) { return std::floor(x) == x; }

Sampler make_sampler(const RunConfig& cfg) {
  const LevyFamily fam = make_family(cfg);
  const TruncationSpec trunc{cfg.tol, 1'000'000};
  const std::size_t k = cfg.n_weights;
  const std::string& con = cfg.construction;
  if (con == "jump") {
    return [=](RandomStream& rng) { return sample_pk_r(fam, cfg.r, trunc, rng); };
  }
  if (con == "subordinator") {
    return [=](RandomStream& rng) { return sample_pk_r_subordinated(fam, cfg.r, trunc, rng); };
  }
  if (con == "stick") {
    constexpr std::size_t kMaxTerms = 100'000'000;
    if (cfg.family == "stable") {
      return [=](RandomStream& rng) { return sample_pd_stick_ranked(cfg.alpha, 0.0, k, kMaxTerms, rng); };
    }
    if (cfg.family == "gen-gamma") {
      const double theta = cfg.r * cfg.alpha;
      return [=](RandomStream& rng) { return sample_pd_stick_ranked(cfg.alpha, theta, k, kMaxTerms, rng); };
    }
    if (cfg.family == "gamma") {
      return [=](RandomStream& rng) { return sample_pk_r_gamma_stick_ranked(cfg.theta, cfg.r, k, kMaxTerms, rng); };
    }
    throw UsageError("construction 'stick' has no independent-factor form for family " + cfg.family +
                     "; use jump or subordinator");
  }
  if (con == "trimmed") {
    if (cfg.family != "stable" && cfg.family != "trunc-stable") {
      throw UsageError("construction 'trimmed' trims a stable subordinator; use --family stable");
    }
    if (!is_integer(cfg.r)) throw UsageError("construction 'trimmed' needs an integer --r");
    const auto r = static_cast<std::size_t>(cfg.r);
    return [=](RandomStream& rng) { return sample_pd_r_trimmed(cfg.alpha, r, trunc, rng); };
  }
  if (con == "ratio") {
    if (cfg.family != "stable" && cfg.family != "trunc-stable") {
      throw UsageError("construction 'ratio' produces PD_alpha^(r); use --family stable or trunc-stable");
    }
    return [=](RandomStream& rng) { return sample_pd_r_ratio(cfg.alpha, cfg.r, trunc, rng); };
  }
  throw UsageError("unknown construction: " + con);
}

// Top k ranked weights, zero padded, and the mass of everything else.
std::pair<std::vector<double>, double> head(const SimplexSample& s, std::size_t k) {
  const SimplexSample ranked = s.order == WeightOrder::ranked ? s : rank(s);
  std::vector<double> w(k, 0.0);
  const std::size_t m = std::min(k, ranked.weights.size());
  std::copy_n(ranked.weights.begin(), m, w.begin());
  double rest = ranked.deficit;
  for (std::size_t i = m; i < ranked.weights.size(); ++i) rest += ranked.weights[i];
  return {std::move(w), rest};
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  validate_common(cfg);
  if (cfg.n_weights < 1) throw UsageError("--n-weights must be at least 1");
  const Sampler sampler = make_sampler(cfg);
  const std::string desc = "construction=" + cfg.construction + " family=" + make_family(cfg).describe() +
                           " r=" + fmt_g17(cfg.r) + " tol=" + fmt_g17(cfg.tol);
  const RandomStream master(cfg.seed);
  if (cfg.format == "csv") {
    out << meta_line(cfg, desc) << '\n';
    for (std::size_t i = 1; i <= cfg.n_weights; ++i) out << 'w' << i << ',';
    out << "deficit\n";
  }
  json rows = json::array();
  for (std::size_t i = 0; i < cfg.n_samples; ++i) {
    RandomStream rng = master.split(i);
    const auto [w, deficit] = head(sampler(rng), cfg.n_weights);
    if (cfg.format == "csv") {
      for (double x : w) out << fmt_g17(x) << ',';
      out << fmt_g17(deficit) << '\n';
    } else {
      json meta = meta_json(cfg);
      meta["sample_index"] = i;
      meta["construction"] = cfg.construction;
      meta["family"] = make_family(cfg).describe();
      meta["r"] = cfg.r;
      meta["tol"] = cfg.tol;
      rows.push_back(json{{"weights", w}, {"deficit", deficit}, {"meta", std::move(meta)}});
    }
  }
  if (cfg.format == "json") out << rows.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// density

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  validate_common(cfg);
  if (cfg.family != "stable" || cfg.alpha != 0.5) {
    throw UsageError("densities are available for --family stable --alpha 0.5 only");
  }
  if (cfg.points < 2) throw UsageError("--points must be at least 2");
  if (!(cfg.from < cfg.to)) throw UsageError("--from must be below --to");
  const DensityContext ctx{LevyFamily::stable(cfg.alpha, cfg.c), cfg.r};
  std::function<double(double)> f;
  if (cfg.density == "g_r") {
    if (!(cfg.from > 0.0)) throw UsageError("g_r needs --from > 0");
    f = [&](double x) { return g_r_density(ctx, x); };
  } else if (cfg.density == "first-pick") {
    if (!(cfg.from > 0.0 && cfg.to < 1.0)) throw UsageError("first-pick needs 0 < --from < --to < 1");
    if (!(cfg.t > 0.0)) throw UsageError("--t must be positive");
    f = [&](double x) { return first_pick_density(ctx, x, cfg.t); };
  } else if (cfg.density == "transition") {
    if (!(cfg.from > 0.0 && cfg.to < cfg.t)) throw UsageError("transition needs 0 < --from < --to < --t");
    f = [&](double x) { return transition_density(ctx, cfg.n, cfg.t, x); };
  } else if (cfg.density == "marginal-tn") {
    if (!(cfg.from > 0.0)) throw UsageError("marginal-tn needs --from > 0");
    f = [&](double x) { return marginal_tn_density(cfg.alpha, cfg.c, cfg.r, cfg.n, x); };
  } else {
    throw UsageError("unknown density: " + cfg.density);
  }
  const std::string desc = "density=" + cfg.density + " alpha=" + fmt_g17(cfg.alpha) + " c=" + fmt_g17(cfg.c) +
                           " r=" + fmt_g17(cfg.r) + " t=" + fmt_g17(cfg.t) + " n=" + std::to_string(cfg.n);
  json rows = json::array();
  if (cfg.format == "csv") out << meta_line(cfg, desc) << "\nx,value\n";
  const double step = (cfg.to - cfg.from) / static_cast<double>(cfg.points - 1);
  for (std::size_t i = 0; i < cfg.points; ++i) {
    const double x = i + 1 == cfg.points ? cfg.to : cfg.from + step * static_cast<double>(i);
    const double v = f(x);
    if (cfg.format == "csv") {
      out << fmt_g17(x) << ',' << fmt_g17(v) << '\n';
    } else {
      rows.push_back(json{{"x", x}, {"value", v}});
    }
  }
  if (cfg.format == "json") {
    json meta = meta_json(cfg);
    meta["density"] = cfg.density;
    meta["alpha"] = cfg.alpha;
    meta["c"] = cfg.c;
    meta["r"] = cfg.r;
    meta["t"] = cfg.t;
    meta["n"] = cfg.n;
    out << json{{"meta", meta}, {"points", rows}}.dump(2) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.list) {
    for (const std::string& s : suite_names()) {
      out << s << ':';
      for (const Criterion& c : criteria()) {
        if (c.suite == s) out << ' ' << c.name;
      }
      out << '\n';
    }
    return kOk;
  }
  if (!(cfg.sample_scale > 0.0)) throw UsageError("--sample-scale must be positive");
  const auto suites = suite_names();
  if (cfg.suite != "all" && std::find(suites.begin(), suites.end(), cfg.suite) == suites.end()) {
    throw UsageError("unknown suite: " + cfg.suite + " (see verify --list)");
  }
  VerifyOptions opts;
  opts.sample_scale = cfg.sample_scale;
  std::vector<VerificationReport> reps;
  bool all_passed = true;
  for (const Criterion& c : criteria()) {
    if (cfg.suite != "all" && c.suite != cfg.suite) continue;
    VerificationReport rep = run_criterion(c, cfg.seed, opts);
    err << (rep.passed ? "PASS " : "FAIL ") << rep.test_name << "  " << rep.notes << '\n';
    all_passed = all_passed && rep.passed;
    reps.push_back(std::move(rep));
  }
  if (cfg.format == "csv") {
    out << meta_line(cfg, "suite=" + cfg.suite) << '\n' << reports_to_csv(reps);
  } else {
    json arr = json::array();
    for (const auto& rep : reps) arr.push_back(report_to_json(rep));
    out << json{{"meta", meta_json(cfg)}, {"reports", arr}}.dump(2) << '\n';
  }
  return all_passed ? kOk : kVerificationFailed;
}

// ---------------------------------------------------------------------------
// zipf

int cmd_zipf(const RunConfig& cfg, std::ostream& out) {
  validate_common(cfg);
  if (cfg.max_rank < 2) throw UsageError("--max-rank must be at least 2");
  if (!is_integer(cfg.r)) throw UsageError("zipf compares against the trimmed construction; --r must be an integer");
  const TruncationSpec trunc{cfg.tol, 1'000'000};
  const LevyFamily fam = LevyFamily::stable(cfg.alpha, 1.0);
  const auto r = static_cast<std::size_t>(cfg.r);
  std::vector<double> pd(cfg.max_rank, 0.0);
  std::vector<double> pdr(cfg.max_rank, 0.0);
  const RandomStream master(cfg.seed);
  auto accumulate = [&](std::vector<double>& acc, const SimplexSample& s) {
    const auto [w, rest] = head(s, cfg.max_rank);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w[i];
  };
  for (std::size_t i = 0; i < cfg.n_samples; ++i) {
    RandomStream rng = master.split(i);
    accumulate(pd, sample_pk(fam, 1.0, trunc, rng));
    accumulate(pdr, sample_pd_r_trimmed(cfg.alpha, r, trunc, rng));
  }
  const double n = static_cast<double>(cfg.n_samples);
  json rows = json::array();
  if (cfg.format == "csv") {
    out << meta_line(cfg, "alpha=" + fmt_g17(cfg.alpha) + " r=" + std::to_string(r) + " tol=" + fmt_g17(cfg.tol))
        << "\nlog_rank,log_mean_pd,log_mean_pd_r\n";
  }
  for (std::size_t i = 0; i < cfg.max_rank; ++i) {
    const double lr = std::log(static_cast<double>(i + 1));
    const double a = std::log(pd[i] / n);
    const double b = std::log(pdr[i] / n);
    if (cfg.format == "csv") {
      out << fmt_g17(lr) << ',' << fmt_g17(a) << ',' << fmt_g17(b) << '\n';
    } else {
      rows.push_back(json{{"log_rank", lr}, {"log_mean_pd", a}, {"log_mean_pd_r", b}});
    }
  }
  if (cfg.format == "json") {
    json meta = meta_json(cfg);
    meta["alpha"] = cfg.alpha;
    meta["r"] = r;
    out << json{{"meta", meta}, {"points", rows}}.dump(2) << '\n';
  }
  return kOk;
}

// Where tabular output goes: --output, else $NBPK_OUTPUT_DIR/<command>.<format>,
// else the supplied stream.
std::unique_ptr<std::ofstream> open_output(const RunConfig& cfg) {
  std::filesystem::path path;
  if (!cfg.output.empty()) {
    path = cfg.output;
  } else if (const char* dir = std::getenv("NBPK_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    path = std::filesystem::path(dir) / (cfg.command + "." + cfg.format);
  } else {
    return nullptr;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto file = std::make_unique<std::ofstream>(path);
  if (!*file) throw UsageError("cannot open output file " + path.string());
  return file;
}

}  // namespace

nlohmann::json report_to_json(const VerificationReport& rep) {
  nlohmann::json j{{"test_name", rep.test_name},
                   {"statistic", rep.statistic},
                   {"threshold", rep.threshold},
                   {"p_value", nullptr},
                   {"passed", rep.passed},
                   {"n_samples", rep.n_samples},
                   {"seed", rep.seed},
                   {"notes", rep.notes}};
  if (rep.p_value) j["p_value"] = *rep.p_value;
  if (!std::isfinite(rep.statistic)) j["statistic"] = nullptr;
  return j;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reps) {
  std::ostringstream os;
  os << "test_name,statistic,threshold,p_value,passed,n_samples,seed,notes\n";
  for (const auto& rep : reps) {
    os << csv_escape(rep.test_name) << ',' << fmt_g17(rep.statistic) << ',' << fmt_g17(rep.threshold) << ','
       << (rep.p_value ? fmt_g17(*rep.p_value) : "") << ',' << (rep.passed ? "true" : "false") << ','
       << rep.n_samples << ',' << rep.seed << ',' << csv_escape(rep.notes) << '\n';
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Sampling and verification for negative binomial Poisson-Kingman laws", "nbpk"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--output", cfg.output, "Output file (default: $NBPK_OUTPUT_DIR/<command>.<format> or stdout)");
    sub->add_option("--seed", cfg.seed, "Master seed");
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "Levy family")
        ->check(CLI::IsMember({"stable", "gamma", "trunc-stable", "gen-gamma"}));
    sub->add_option("--alpha", cfg.alpha, "Stability index in (0, 1)");
    sub->add_option("--theta", cfg.theta, "Gamma family parameter");
    sub->add_option("--c", cfg.c, "Stable scale C");
    sub->add_option("--r", cfg.r, "Negative binomial parameter r > 0");
    sub->add_option("--tol", cfg.tol, "Relative tail tolerance for jump truncation");
  };

  CLI::App* sample = app.add_subcommand("sample", "Draw ranked weights from PK^(r)(rho)");
  add_family(sample);
  add_format(sample);
  sample->add_option("--construction", cfg.construction, "Sampler")
      ->check(CLI::IsMember({"jump", "stick", "trimmed", "ratio", "subordinator"}));
  sample->add_option("--n-weights", cfg.n_weights, "Ranked weights per row");
  sample->add_option("--n-samples", cfg.n_samples, "Number of rows");

  CLI::App* density = app.add_subcommand("density", "Evaluate a density on a grid (alpha = 1/2)");
  add_family(density);
  add_format(density);
  density->add_option("--name", cfg.density, "Density")
      ->check(CLI::IsMember({"g_r", "first-pick", "transition", "marginal-tn"}));
  density->add_option("--t", cfg.t, "Conditioning total for first-pick and transition");
  density->add_option("--n", cfg.n, "Index n for transition and marginal-tn");
  density->add_option("--from", cfg.from, "First grid point");
  density->add_option("--to", cfg.to, "Last grid point");
  density->add_option("--points", cfg.points, "Number of grid points");

  CLI::App* verify = app.add_subcommand("verify", "Run the verification suites");
  add_format(verify);
  verify->add_option("--suite", cfg.suite, "Suite name or 'all'");
  verify->add_flag("--list", cfg.list, "List suites and their checks");
  verify->add_option("--sample-scale", cfg.sample_scale, "Multiplier for Monte Carlo sample sizes");

  CLI::App* zipf = app.add_subcommand("zipf", "Mean ranked weights of PD(alpha, 0) and PD_alpha^(r) on log scales");
  add_family(zipf);
  add_format(zipf);
  zipf->add_option("--n-samples", cfg.n_samples, "Number of draws averaged");
  zipf->add_option("--max-rank", cfg.max_rank, "Largest rank emitted");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (CLI::App* sub : {sample, density, verify, zipf}) {
      if (sub->parsed()) cfg.command = sub->get_name();
    }
    if (cfg.command == "zipf" && zipf->count("--family") && cfg.family != "stable") {
      throw UsageError("zipf compares stable-based laws; --family must be stable");
    }
    if (cfg.command == "zipf" && !zipf->count("--n-samples")) cfg.n_samples = 1000;
    auto file = cfg.list ? nullptr : open_output(cfg);
    std::ostream& dest = file ? *file : out;
    if (cfg.command == "sample") return cmd_sample(cfg, dest);
    if (cfg.command == "density") return cmd_density(cfg, dest);
    if (cfg.command == "verify") return cmd_verify(cfg, dest, err);
    return cmd_zipf(cfg, dest);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace nbpk::cli
