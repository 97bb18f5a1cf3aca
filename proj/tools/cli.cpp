#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "limitlaw/errors.hpp"
#include "limitlaw/identities.hpp"
#include "limitlaw/mellin.hpp"
#include "limitlaw/moments.hpp"
#include "limitlaw/montecarlo.hpp"
#include "limitlaw/serialize.hpp"

namespace limitlaw::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format;
  std::string output;
  std::string manifest;
  unsigned threads = 1;
};

struct MomentsArgs {
  Common common;
  std::string which = "fkp";
  std::optional<double> a_prime, toll, alpha, beta, d, p, t;
  std::size_t smax = 10;
  std::string phi;
};

struct CheckArgs {
  Common common;
  std::string identity;
  std::vector<double> a_prime, alpha, beta, d, p, t;
  std::size_t smax = 20;
  std::optional<double> tol;
};

struct DensityArgs {
  Common common;
  std::string spec;
  std::optional<double> alpha;
  std::optional<unsigned> m;
  std::optional<double> grid_min, grid_max;
  std::size_t points = 600;
  std::optional<double> abscissa, height, step;
  std::optional<std::size_t> roundtrip;
  std::optional<double> tol;
};

struct SampleArgs {
  Common common;
  std::string sampler;
  std::optional<std::size_t> n;
  std::optional<std::size_t> reps;
  std::uint64_t seed = 42;
  double sigma = 1.0;
  std::optional<double> alpha;
  double toll = 0.0;
  std::string kernel_file;
  std::size_t smax = 4;
  std::string check_against;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("-o,--output", c.output, "Write results here instead of standard output");
  sub->add_option("--manifest", c.manifest,
                  "Write a JSON run manifest (version, options, seed); '-' for standard error");
  sub->add_option("--threads", c.threads, "Worker threads")
      ->envname("LIMITLAW_THREADS")
      ->check(CLI::Range(1u, 4096u))
      ->capture_default_str();
}

void reject(const CLI::App* sub, std::initializer_list<const char*> names,
            const std::string& context) {
  for (const char* name : names) {
    if (sub->count(name) > 0) throw UsageError(std::string(name) + " does not apply to " + context);
  }
}

void require_positive_tolerance(const std::optional<double>& tol) {
  if (tol && !(*tol > 0.0)) throw UsageError("--tol must be > 0");
}

// ---------------------------------------------------------------- moments

moments::BesselParams bessel_from(const MomentsArgs& a) {
  const bool ab = a.alpha || a.beta;
  const bool dp = a.d || a.p;
  if (ab && dp) throw UsageError("give --alpha/--beta or --d/--p, not both");
  const double t = a.t.value_or(1.0);
  if (ab) {
    if (!a.alpha || !a.beta) throw UsageError("--alpha and --beta go together");
    return moments::BesselParams::from_alpha_beta(*a.alpha, *a.beta, t);
  }
  if (dp) {
    if (!a.d || !a.p) throw UsageError("--d and --p go together");
    return moments::BesselParams::from_dimension(*a.d, *a.p, t);
  }
  throw UsageError("--which " + a.which + " needs --alpha/--beta or --d/--p");
}

double a_prime_from(const std::optional<double>& a_prime, const std::optional<double>& toll,
                    const std::string& context) {
  if (a_prime && toll) throw UsageError("give --a-prime or --toll, not both");
  if (toll) return moments::FkpParams::from_toll(*toll).a_prime;
  if (!a_prime) throw UsageError(context + " needs --a-prime or --toll");
  return *a_prime;
}

moments::PhiConvention phi_from(const std::string& name) {
  if (name == "paper") return moments::PhiConvention::QuadrupleScale;
  if (name == "half") return moments::PhiConvention::DoubleScale;
  throw UsageError("--phi-convention must be paper or half");
}

moments::MomentSequence compute_moments(const CLI::App* sub, const MomentsArgs& a) {
  const std::string ctx = "--which " + a.which;
  if (a.which == "fkp") {
    reject(sub, {"--alpha", "--beta", "--d", "--p", "--t", "--phi-convention"}, ctx);
    return moments::fkp_moments(a_prime_from(a.a_prime, a.toll, ctx), a.smax);
  }
  if (a.which == "local-time") {
    reject(sub, {"--a-prime", "--toll", "--phi-convention"}, ctx);
    return moments::local_time_moments(bessel_from(a), a.smax);
  }
  if (a.which == "tilted") {
    reject(sub, {"--a-prime", "--toll", "--t", "--phi-convention"}, ctx);
    const auto params = bessel_from(a);
    return moments::tilted_T_moments(params.alpha(), params.beta(), a.smax);
  }
  if (a.which == "exp-functional") {
    reject(sub, {"--a-prime", "--toll", "--phi-convention"}, ctx);
    return moments::exp_functional_moments(bessel_from(a), a.smax);
  }
  if (a.which == "mittag-leffler") {
    reject(sub, {"--a-prime", "--toll", "--beta", "--d", "--p", "--t", "--phi-convention"}, ctx);
    if (!a.alpha) throw UsageError(ctx + " needs --alpha");
    return moments::mittag_leffler_moments(*a.alpha, a.smax);
  }
  // subordinator
  reject(sub, {"--alpha", "--beta", "--d", "--p", "--t"}, ctx);
  if (a.phi.empty()) throw UsageError(ctx + " needs --phi-convention paper|half");
  return moments::subordinator_recursion_moments(a_prime_from(a.a_prime, a.toll, ctx), a.smax,
                                                 phi_from(a.phi));
}

int cmd_moments(const CLI::App* sub, const MomentsArgs& a, std::ostream& out) {
  const auto seq = compute_moments(sub, a);
  if (a.common.format == "json") {
    out << to_json(seq).dump(2) << '\n';
  } else {
    write_csv(out, seq);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- check

const std::vector<double> kAlphaGrid{0.1, 0.3, 0.5, 0.7, 0.9};
const std::vector<double> kBetaGrid{0.25, 0.5, 1.0, 2.0};
const std::vector<double> kScaledTiltGrid{0.5, 0.75, 1.0, 1.5, 2.5};
const std::vector<double> kMittagLefflerGrid{0.25, 0.5, 0.75};
const std::vector<double> kPhiGrid{0.25, 0.5, 1.0, 2.0};
const std::vector<double> kTimeGrid{0.5, 1.0, 2.0, 10.0};

std::vector<moments::BesselParams> bessel_grid(const CheckArgs& a) {
  const bool ab = !a.alpha.empty() || !a.beta.empty();
  const bool dp = !a.d.empty() || !a.p.empty();
  if (ab && dp) throw UsageError("give --alpha/--beta or --d/--p, not both");
  std::vector<moments::BesselParams> grid;
  if (dp) {
    if (a.d.empty() || a.p.empty()) throw UsageError("--d and --p go together");
    for (double d : a.d)
      for (double p : a.p) grid.push_back(moments::BesselParams::from_dimension(d, p));
    return grid;
  }
  const auto& alphas = a.alpha.empty() ? kAlphaGrid : a.alpha;
  const auto& betas = a.beta.empty() ? kBetaGrid : a.beta;
  for (double alpha : alphas)
    for (double beta : betas) grid.push_back(moments::BesselParams::from_alpha_beta(alpha, beta));
  return grid;
}

json reports_json(const std::string& identity, std::span<const identities::ComparisonReport> reports,
                  bool pass) {
  json list = json::array();
  for (const auto& r : reports) list.push_back(to_json(r));
  return {{"identity", identity}, {"pass", pass}, {"reports", list}};
}

int cmd_phi(const CheckArgs& a, std::ostream& out) {
  const auto& grid = a.a_prime.empty() ? kPhiGrid : a.a_prime;
  std::vector<identities::PhiAdjudication> results;
  std::vector<identities::ComparisonReport> flat;
  bool paper = true, half = true;
  for (double ap : grid) {
    auto r = identities::adjudicate_phi_convention(ap, a.smax);
    if (a.tol) {
      r.quadruple_scale.tolerance = *a.tol;
      r.double_scale.tolerance = *a.tol;
      identities::finalize(r.quadruple_scale);
      identities::finalize(r.double_scale);
    }
    paper = paper && r.quadruple_scale.pass;
    half = half && r.double_scale.pass;
    flat.push_back(r.quadruple_scale);
    flat.push_back(r.double_scale);
    results.push_back(std::move(r));
  }
  if (a.common.format == "json") {
    json list = json::array();
    for (const auto& r : results) list.push_back(to_json(r));
    json doc = {{"identity", "phi-adjudicate"},
                {"tolerance", a.tol.value_or(identities::kPhiAdjudicationTolerance)},
                {"matches", {{"paper", paper}, {"half", half}}},
                {"adjudications", list}};
    out << doc.dump(2) << '\n';
  } else {
    write_csv(out, flat);
  }
  return kExitOk;
}

int cmd_check(const CLI::App* sub, const CheckArgs& a, std::ostream& out) {
  require_positive_tolerance(a.tol);
  const std::string ctx = "--identity " + a.identity;
  if (a.identity == "phi-adjudicate") {
    reject(sub, {"--alpha", "--beta", "--d", "--p", "--t"}, ctx);
    return cmd_phi(a, out);
  }
  const std::size_t S = a.smax;
  std::vector<identities::ComparisonReport> reports;
  if (a.identity == "tilt") {
    reject(sub, {"--a-prime", "--t"}, ctx);
    const double tol = a.tol.value_or(1e-12);
    for (const auto& P : bessel_grid(a)) {
      reports.push_back(identities::compare(moments::tilt(moments::scaled_local_time_moments(P, S + 1)),
                                            moments::tilted_T_moments(P.alpha(), P.beta(), S), tol));
    }
  } else if (a.identity == "corollary") {
    reject(sub, {"--alpha", "--beta", "--d", "--p", "--t"}, ctx);
    const double tol = a.tol.value_or(1e-11);
    for (double ap : a.a_prime.empty() ? kScaledTiltGrid : a.a_prime) {
      reports.push_back(identities::compare(
          moments::fkp_moments(ap, S),
          moments::scale(moments::tilted_T_moments(0.5, ap, S), 1.0 / std::numbers::sqrt2), tol));
    }
  } else if (a.identity == "mittag-leffler") {
    reject(sub, {"--a-prime", "--beta", "--d", "--p", "--t"}, ctx);
    const double tol = a.tol.value_or(1e-12);
    for (double alpha : a.alpha.empty() ? kMittagLefflerGrid : a.alpha) {
      const auto P = moments::BesselParams::from_alpha_beta(
          alpha, alpha, moments::time_for_unit_kappa(alpha, 0.0));
      reports.push_back(identities::compare(moments::local_time_moments(P, S),
                                            moments::mittag_leffler_moments(alpha, S), tol));
    }
  } else if (a.identity == "exp-functional") {
    reject(sub, {"--a-prime", "--t"}, ctx);
    const double tol = a.tol.value_or(1e-11);
    const double mean_tol = a.tol.value_or(1e-12);
    for (const auto& P : bessel_grid(a)) {
      reports.push_back(identities::compare(
          moments::exp_functional_moments(P, S),
          moments::scale(moments::tilted_T_moments(P.alpha(), P.beta(), S), moments::kappa(P)), tol));
      const moments::MomentSequence mean({1.0, moments::mean_local_time_at_1(P)},
                                         "mean_local_time_at_1", P.record());
      const moments::MomentSequence first({1.0, moments::local_time_moments(P, 1)[1]},
                                          "local_time_first_moment", P.record());
      reports.push_back(identities::compare(mean, first, mean_tol));
    }
  } else {  // t-independence
    reject(sub, {"--a-prime"}, ctx);
    const double tol = a.tol.value_or(1e-12);
    for (const auto& P : bessel_grid(a)) {
      const auto reference = moments::scaled_local_time_moments(P, S);
      for (double t : a.t.empty() ? kTimeGrid : a.t) {
        const auto Pt = P.with_time(t);
        auto report = identities::compare(
            moments::scale(moments::local_time_moments(Pt, S), 1.0 / moments::kappa(Pt)), reference,
            tol);
        report.params["t"] = t;
        reports.push_back(std::move(report));
      }
    }
  }
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  if (a.common.format == "json") {
    out << reports_json(a.identity, reports, pass).dump(2) << '\n';
  } else {
    write_csv(out, reports);
  }
  return pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- density

mellin::MellinSpec density_spec(const CLI::App* sub, const DensityArgs& a) {
  const std::string ctx = "--spec " + a.spec;
  mellin::MellinSpec spec;
  if (a.spec == "fkp-quarter") {
    reject(sub, {"--alpha", "--m"}, ctx);
    spec = mellin::spec_from_fkp_quarter();
  } else if (a.spec == "mittag-leffler") {
    reject(sub, {"--m"}, ctx);
    if (!a.alpha) throw UsageError(ctx + " needs --alpha");
    spec = mellin::spec_from_mittag_leffler(*a.alpha);
  } else if (a.spec == "exponential") {
    reject(sub, {"--alpha", "--m"}, ctx);
    spec = mellin::spec_from_exponential();
  } else {  // beta-fraction
    if (!a.alpha || !a.m) throw UsageError(ctx + " needs --alpha and --m");
    spec = mellin::spec_from_beta_fraction(*a.alpha, *a.m);
  }
  if (a.abscissa) {
    spec.quadrature.policy = mellin::AbscissaPolicy::Fixed;
    spec.quadrature.abscissa = *a.abscissa;
  }
  if (a.height) {
    if (!(*a.height > 0.0)) throw UsageError("--height must be > 0");
    spec.quadrature.height = *a.height;
  }
  if (a.step) {
    if (!(*a.step > 0.0)) throw UsageError("--step must be > 0");
    spec.quadrature.step = *a.step;
  }
  spec.validate();
  return spec;
}

int cmd_density(const CLI::App* sub, const DensityArgs& a, std::ostream& out) {
  require_positive_tolerance(a.tol);
  if (a.tol && !a.roundtrip) throw UsageError("--tol applies only with --roundtrip");
  if (a.points < 2) throw UsageError("--grid-points must be >= 2");
  if (a.roundtrip && *a.roundtrip < 1) throw UsageError("--roundtrip must be >= 1");
  const auto spec = density_spec(sub, a);
  const std::size_t cover = a.roundtrip.value_or(0);
  std::vector<double> grid = mellin::default_grid(spec, a.points, 1e-8, cover);
  if (a.grid_min || a.grid_max) {
    const double lo = a.grid_min.value_or(grid.front());
    const double hi = a.grid_max.value_or(grid.back());
    if (!(lo > 0.0 && hi > lo)) throw UsageError("grid needs 0 < --grid-min < --grid-max");
    grid = mellin::geometric_grid(lo, hi, a.points);
  }
  const auto table = mellin::invert(spec, grid, a.common.threads);

  std::optional<identities::ComparisonReport> roundtrip;
  if (a.roundtrip) {
    const std::size_t S = *a.roundtrip;
    const auto got = mellin::roundtrip_moments(table, S);
    std::vector<double> target(S + 1, 1.0);
    for (std::size_t s = 1; s <= S; ++s) target[s] = spec.value(static_cast<double>(s) + 1.0);
    roundtrip = identities::compare(got, moments::MomentSequence(target, "mellin_transform"),
                                    a.tol.value_or(1e-4));
  }

  if (a.common.format == "json") {
    auto doc = to_json(table);
    if (roundtrip) doc["roundtrip"] = to_json(*roundtrip);
    out << doc.dump(2) << '\n';
  } else {
    if (roundtrip) {
      for (const auto& d : roundtrip->per_s) {
        out << "# roundtrip s=" << d.s << " value=" << format_csv_number(d.a)
            << " target=" << format_csv_number(d.b)
            << " deviation=" << format_csv_number(d.deviation) << '\n';
      }
      out << "# roundtrip pass=" << (roundtrip->pass ? "true" : "false") << '\n';
    }
    write_csv(out, table);
  }
  return roundtrip && !roundtrip->pass ? kExitCheckFailed : kExitOk;
}

// ---------------------------------------------------------------- sample

double parse_check_target(const std::string& text) {
  const std::string prefix = "fkp:";
  if (text.rfind(prefix, 0) != 0) throw UsageError("--check-against must look like fkp:<a'>");
  const std::string rest = text.substr(prefix.size());
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(rest, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != rest.size()) throw UsageError("--check-against: bad a' '" + rest + "'");
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("--check-against: a' must be > 0");
  return v;
}

int cmd_sample(const CLI::App* sub, const SampleArgs& a, std::ostream& out) {
  const std::string ctx = "--sampler " + a.sampler;
  if (!a.n) throw UsageError(ctx + " needs --n");
  const unsigned threads = a.common.threads;
  std::optional<double> check_a;
  if (!a.check_against.empty()) {
    check_a = parse_check_target(a.check_against);
    if (a.smax < 3) throw UsageError("--check-against needs --smax >= 3");
  }

  mc::SampleSummary summary;
  json laplace;
  if (a.sampler == "rayleigh") {
    reject(sub, {"--alpha", "--toll", "--kernel-file", "--reps"}, ctx);
    summary = mc::sample_rayleigh(a.sigma, *a.n, a.seed, a.smax, threads);
  } else if (a.sampler == "stable") {
    reject(sub, {"--sigma", "--toll", "--kernel-file", "--reps"}, ctx);
    if (!a.alpha) throw UsageError(ctx + " needs --alpha");
    const auto xs = mc::draw_positive_stable(*a.alpha, *a.n, a.seed, threads);
    summary = mc::summarize(xs, a.smax, a.seed, "stable", {{"alpha", *a.alpha}}, threads);
    laplace = json::array();
    for (double lambda : {1.0, 2.0}) {
      const auto e = mc::laplace_transform_estimate(xs, lambda);
      const double target = std::exp(-std::pow(lambda, *a.alpha));
      const double z = e.standard_error > 0.0 ? std::abs(e.mean - target) / e.standard_error : 0.0;
      laplace.push_back({{"lambda", lambda},
                         {"mean", e.mean},
                         {"standard_error", e.standard_error},
                         {"target", target},
                         {"z_score", z}});
    }
  } else if (a.sampler == "mittag-leffler") {
    reject(sub, {"--sigma", "--toll", "--kernel-file", "--reps"}, ctx);
    if (!a.alpha) throw UsageError(ctx + " needs --alpha");
    summary = mc::sample_mittag_leffler(*a.alpha, *a.n, a.seed, a.smax, threads);
  } else {  // tree
    reject(sub, {"--sigma", "--alpha"}, ctx);
    mc::SplitKernel kernel = mc::SplitKernel::uniform();
    if (!a.kernel_file.empty()) {
      std::ifstream in(a.kernel_file);
      if (!in) throw InputError("cannot open kernel file " + a.kernel_file);
      kernel = mc::SplitKernel::from_csv(in);
    }
    summary = mc::simulate_tree_cost(kernel, a.toll, *a.n, a.reps.value_or(100000), a.seed,
                                     a.smax, threads);
  }

  std::optional<identities::ComparisonReport> check;
  if (check_a) check = mc::scale_free_ratio_check(summary, *check_a);

  if (a.common.format == "json") {
    auto doc = to_json(summary);
    if (!laplace.is_null()) doc["laplace_transform"] = laplace;
    if (check) doc["check"] = to_json(*check);
    out << doc.dump(2) << '\n';
  } else {
    out << "# sampler=" << summary.sampler << '\n';
    out << "# seed=" << summary.seed << '\n';
    out << "# n=" << summary.n << '\n';
    if (check) out << "# check pass=" << (check->pass ? "true" : "false") << '\n';
    out << "s,moment,standard_error\n";
    for (std::size_t s = 0; s < summary.moments.size(); ++s) {
      out << s << ',' << format_csv_number(summary.moments[s]) << ','
          << format_csv_number(summary.standard_errors[s]) << '\n';
    }
  }
  return check && !check->pass ? kExitCheckFailed : kExitOk;
}

// ---------------------------------------------------------------- plumbing

json manifest_for(const CLI::App* sub, const std::vector<std::string>& args) {
  json options = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name();
    if (name == "--help" || name == "-h,--help") continue;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      options[name] = results.size() == 1 ? json(results.front()) : json(results);
    } else if (!opt->get_default_str().empty()) {
      options[name] = opt->get_default_str();
    }
  }
  return {{"tool", "limitlaw"},
          {"version", kVersion},
          {"subcommand", sub->get_name()},
          {"arguments", args},
          {"options", options}};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open output file " + path);
  file << text;
  if (!file) throw InputError("failed writing " + path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moment sequences, identity checks, densities and samplers for the one-sided "
               "tree-destruction limit law",
               "limitlaw"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  MomentsArgs ma;
  auto* moments_cmd = app.add_subcommand("moments", "Emit a moment sequence as s,value rows");
  add_common(moments_cmd, ma.common, "csv");
  moments_cmd
      ->add_option("--which", ma.which, "Sequence family")
      ->check(CLI::IsMember(
          {"fkp", "local-time", "tilted", "exp-functional", "mittag-leffler", "subordinator"}))
      ->capture_default_str();
  moments_cmd->add_option("--a-prime", ma.a_prime, "Shifted toll exponent a' = a + 1/2");
  moments_cmd->add_option("--toll", ma.toll, "Toll exponent a >= 0 (sets a' = a + 1/2)");
  moments_cmd->add_option("--alpha", ma.alpha, "alpha in (0, 1)");
  moments_cmd->add_option("--beta", ma.beta, "beta > 0");
  moments_cmd->add_option("--d", ma.d, "Bessel dimension in (0, 2)");
  moments_cmd->add_option("--p", ma.p, "Reinforcement parameter < 1/2");
  moments_cmd->add_option("--t", ma.t, "Time t > 0 (default 1)");
  moments_cmd->add_option("--smax", ma.smax, "Largest order S")->capture_default_str();
  moments_cmd->add_option("--phi-convention", ma.phi,
                          "Laplace exponent scale for --which subordinator: paper (4a') or half (2a')")
      ->check(CLI::IsMember({"paper", "half"}));

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "Run identity checks and emit comparison reports");
  add_common(check_cmd, ca.common, "json");
  check_cmd
      ->add_option("--identity", ca.identity, "Identity to check")
      ->required()
      ->check(CLI::IsMember({"tilt", "corollary", "mittag-leffler", "exp-functional",
                             "phi-adjudicate", "t-independence"}));
  check_cmd->add_option("--a-prime", ca.a_prime, "a' values (comma separated)")->delimiter(',');
  check_cmd->add_option("--alpha", ca.alpha, "alpha values")->delimiter(',');
  check_cmd->add_option("--beta", ca.beta, "beta values")->delimiter(',');
  check_cmd->add_option("--d", ca.d, "dimension values")->delimiter(',');
  check_cmd->add_option("--p", ca.p, "reinforcement values")->delimiter(',');
  check_cmd->add_option("--t", ca.t, "time values for t-independence")->delimiter(',');
  check_cmd->add_option("--smax", ca.smax, "Largest order S")->capture_default_str();
  check_cmd->add_option("--tol", ca.tol, "Relative tolerance override");

  DensityArgs da;
  auto* density_cmd = app.add_subcommand("density", "Tabulate a density by inverse Mellin transform");
  add_common(density_cmd, da.common, "csv");
  density_cmd->add_option("--spec", da.spec, "Mellin transform")
      ->required()
      ->check(CLI::IsMember({"fkp-quarter", "mittag-leffler", "exponential", "beta-fraction"}));
  density_cmd->add_option("--alpha", da.alpha, "alpha in (0, 1)");
  density_cmd->add_option("--m", da.m, "Positive integer m for beta-fraction");
  density_cmd->add_option("--grid-min", da.grid_min, "Smallest x");
  density_cmd->add_option("--grid-max", da.grid_max, "Largest x");
  density_cmd->add_option("--grid-points", da.points, "Number of geometric grid points")
      ->capture_default_str();
  density_cmd->add_option("--abscissa", da.abscissa, "Fixed contour Re(s) = c");
  density_cmd->add_option("--height", da.height, "Truncation height U");
  density_cmd->add_option("--step", da.step, "Trapezoid step h");
  density_cmd->add_option("--roundtrip", da.roundtrip,
                          "Recover moments s <= S from the table and compare with M(s+1)");
  density_cmd->add_option("--tol", da.tol, "Roundtrip relative tolerance (default 1e-4)");

  SampleArgs sa;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a seeded sample and summarise its moments");
  add_common(sample_cmd, sa.common, "json");
  sample_cmd->add_option("--sampler", sa.sampler, "Sampler")
      ->required()
      ->check(CLI::IsMember({"rayleigh", "stable", "mittag-leffler", "tree"}));
  sample_cmd->add_option("--n", sa.n, "Sample count, or the tree size for --sampler tree");
  sample_cmd->add_option("--reps", sa.reps, "Tree replicates (default 100000)");
  sample_cmd->add_option("--seed", sa.seed, "Seed")->capture_default_str();
  sample_cmd->add_option("--sigma", sa.sigma, "Rayleigh scale")->capture_default_str();
  sample_cmd->add_option("--alpha", sa.alpha, "alpha in (0, 1)");
  sample_cmd->add_option("--toll", sa.toll, "Toll exponent a for the tree")->capture_default_str();
  sample_cmd->add_option("--kernel-file", sa.kernel_file, "CSV of n,k,probability rows");
  sample_cmd->add_option("--smax", sa.smax, "Largest moment order")->capture_default_str();
  sample_cmd->add_option("--check-against", sa.check_against,
                         "fkp:<a'> compares scale-free moment ratios at 3 standard errors");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  CLI::App* sub = app.get_subcommands().front();
  const Common& common = sub == moments_cmd   ? ma.common
                         : sub == check_cmd   ? ca.common
                         : sub == density_cmd ? da.common
                                              : sa.common;
  try {
    std::ostringstream buffer;
    int code = kExitOk;
    if (sub == moments_cmd) {
      code = cmd_moments(sub, ma, buffer);
    } else if (sub == check_cmd) {
      code = cmd_check(sub, ca, buffer);
    } else if (sub == density_cmd) {
      code = cmd_density(sub, da, buffer);
    } else {
      code = cmd_sample(sub, sa, buffer);
    }
    emit(buffer.str(), common.output, out);
    if (!common.manifest.empty()) {
      auto manifest = manifest_for(sub, args);
      manifest["exit_code"] = code;
      if (sub == sample_cmd) manifest["seed"] = sa.seed;
      const std::string text = manifest.dump(2) + "\n";
      if (common.manifest == "-") {
        err << text;
      } else {
        emit(text, common.manifest, out);
      }
    }
    return code;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // Domain, length, overflow and input errors all stem from the flags.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace limitlaw::cli
