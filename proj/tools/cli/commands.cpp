#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "run_config.hpp"
#include "thinopt/analytic_hardcore.hpp"
#include "thinopt/analytic_poisson.hpp"
#include "thinopt/dynamics.hpp"
#include "thinopt/errors.hpp"
#include "thinopt/numeric_format.hpp"
#include "thinopt/policy.hpp"
#include "thinopt/simulate.hpp"

namespace thinopt::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

struct Context {
  RunConfig cfg;
  std::string out_dir;  // empty: standard output only
  std::ostream& out;
  std::ostream& err;
};

std::string header(const std::string& command, const RunConfig& cfg) {
  return "# thinopt " + command + " base_seed=" + std::to_string(cfg.base_seed) +
         " mc_seed=" + std::to_string(cfg.mc_seed) + " init_seed=" + std::to_string(cfg.init_seed) + "\n";
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ParseError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw ParseError("failed writing '" + path.string() + "'");
}

// Prints `text` and, when an output directory is set, also saves it there.
void emit(Context& ctx, const std::string& file_name, const std::string& text) {
  ctx.out << text;
  if (!ctx.out_dir.empty()) write_file(fs::path(ctx.out_dir) / file_name, text);
}

Pattern load_pattern(const std::string& path, const ModelParams& p) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open pattern file '" + path + "'");
  Pattern x;
  try {
    x = read_pattern_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  validate_pattern(x, p.window, p.K);
  return x;
}

void require_hardcore(const Pattern& x, double hc) {
  if (auto bad = find_hardcore_violation(x, hc)) {
    throw PreconditionError("pattern violates the hard core (distance " + format_double(hc) +
                            "): points " + std::to_string(bad->first + 1) + " and " +
                            std::to_string(bad->second + 1) + " are too close");
  }
}

std::string method_name(const ValueMethod& m) {
  return std::holds_alternative<ClosedForm>(m) ? "quadrature" : "monte_carlo";
}

int cmd_dstar(Context& ctx) {
  const auto& p = ctx.cfg.model;
  const auto star = d_star(p);
  std::ostringstream text;
  text << header("dstar", ctx.cfg);
  text << "d_star," << format_double(star.value) << "\n";
  text << "attained_at," << star.index << "\n";
  text << "n,d_n\n";
  const int last = std::max(1, star.index + 1);
  for (int n = 1; n <= last; ++n) text << n << ',' << format_double(d_n(n, p)) << '\n';
  emit(ctx, "dstar.csv", text.str());
  return kExitOk;
}

int cmd_value(Context& ctx, const std::string& pattern_path, bool star, int horizon) {
  const auto& p = ctx.cfg.model;
  const Pattern x = load_pattern(pattern_path, p);
  const auto integ = ctx.cfg.integration_spec();
  const auto report = star ? v_star_poisson(x, p, integ) : v_n_poisson(x, horizon, p, integ);
  std::ostringstream text;
  text << header("value", ctx.cfg);
  text << "horizon,method,total,initial_generation_term,birth_stream_term,integral_std_error\n";
  text << (star ? std::string("inf") : std::to_string(horizon)) << ',' << method_name(report.method) << ','
       << format_double(report.total) << ',' << format_double(report.initial_generation_term) << ','
       << format_double(report.birth_stream_term) << ',' << format_double(report.integral_std_error) << '\n';
  emit(ctx, "value.csv", text.str());
  return kExitOk;
}

int report_breach(Context& ctx, const BoundsCurve& curve, const std::string& label) {
  const int row = first_sandwich_breach(curve);
  if (row < 0) return kExitOk;
  ctx.err << "error: " << label << "lower bound exceeds upper bound at n=" << curve.n_values[row] << " ("
          << format_double(curve.lower[row]) << " > " << format_double(curve.upper[row]) << ")\n";
  return kExitInvariant;
}

int cmd_bounds(Context& ctx, const std::string& pattern_path, int n_max) {
  const auto& p = ctx.cfg.model;
  const Pattern x = load_pattern(pattern_path, p);
  require_hardcore(x, p.K);
  const auto curve = bounds_curve(x, n_max, p, p.logistic_growth(), ctx.cfg.integration_spec());
  std::ostringstream text;
  text << header("bounds", ctx.cfg);
  write_bounds_csv(text, curve);
  emit(ctx, "bounds.csv", text.str());
  return report_breach(ctx, curve, "");
}

int cmd_simulate(Context& ctx, const std::string& pattern_path, const std::string& policy_spec) {
  const auto& p = ctx.cfg.model;
  const bool hardcore = ctx.cfg.kernel == KernelChoice::Hardcore;
  SimConfig sim{.horizon = 1,
                .replications = ctx.cfg.replications,
                .base_seed = ctx.cfg.base_seed,
                .kernel = hardcore ? Kernel::hardcore(p) : Kernel::poisson(p),
                .policy = parse_policy(policy_spec, p),
                .initial = load_pattern(pattern_path, p),
                .workers = ctx.cfg.workers};
  if (hardcore) require_hardcore(sim.initial, p.K);
  sim.horizon = ctx.cfg.horizon > 0 ? ctx.cfg.horizon : certified_horizon(sim.initial, p);
  const auto result = estimate_value(sim);
  std::ostringstream text;
  text << header("simulate", ctx.cfg);
  write_sim_result_csv(text, {result});
  text << "# lemma1_bound=" << format_double(lemma1_bound(sim.initial, p)) << '\n';
  emit(ctx, "simulate.csv", text.str());
  return kExitOk;
}

int cmd_figure1(Context& ctx) {
  const auto& base = ctx.cfg.model;
  const std::string dir = ctx.out_dir.empty() ? "." : ctx.out_dir;
  const int n_gap = std::min(50, ctx.cfg.n_max);
  struct Regime {
    std::string name;
    double intensity;
  };
  const Regime regimes[] = {{"sparse", ctx.cfg.sparse_intensity}, {"dense", ctx.cfg.dense_intensity}};

  std::ostringstream summary;
  std::ostringstream manifest;
  summary << header("figure1", ctx.cfg);
  summary << "regime,target_intensity,activity,points,n,v_tilde,v_hat,relative_gap\n";
  manifest << header("figure1", ctx.cfg);
  manifest << "regime,pattern_file,bounds_file\n";
  int status = kExitOk;
  std::uint64_t stream = 1;
  for (const auto& regime : regimes) {
    ModelParams p = base;
    p.beta = regime.intensity;
    const auto cal = calibrate_hardcore_activity(p.window, regime.intensity, p.K, ctx.cfg.init_seed);
    RngStream rng(ctx.cfg.init_seed, stream++);
    const auto sample =
        sample_hardcore_gibbs(p.window, cal.activity, p.K, ctx.cfg.gibbs_sweeps, p.mark_law, p.K, rng);
    const auto curve = bounds_curve(sample.pattern, ctx.cfg.n_max, p, p.logistic_growth(),
                                    ctx.cfg.integration_spec());

    const std::string pattern_file = "pattern_" + regime.name + ".csv";
    const std::string bounds_file = "bounds_" + regime.name + ".csv";
    std::ostringstream pattern_text;
    pattern_text << header("figure1", ctx.cfg);
    write_pattern_csv(pattern_text, sample.pattern);
    write_file(fs::path(dir) / pattern_file, pattern_text.str());
    std::ostringstream bounds_text;
    bounds_text << header("figure1", ctx.cfg);
    write_bounds_csv(bounds_text, curve);
    write_file(fs::path(dir) / bounds_file, bounds_text.str());
    manifest << regime.name << ',' << pattern_file << ',' << bounds_file << '\n';

    const auto row = static_cast<std::size_t>(n_gap - 1);
    const double hi = curve.upper[row];
    const double lo = curve.lower[row];
    const double gap = hi > 0.0 ? (hi - lo) / hi : 0.0;
    summary << regime.name << ',' << format_double(regime.intensity) << ',' << format_double(cal.activity)
            << ',' << sample.pattern.size() << ',' << n_gap << ',' << format_double(lo) << ','
            << format_double(hi) << ',' << format_double(gap) << '\n';
    status = std::max(status, report_breach(ctx, curve, regime.name + " regime: "));
  }
  write_file(fs::path(dir) / "manifest.txt", manifest.str());
  ctx.out << summary.str();
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thinning policies and value bounds for marked point process dynamics", "thinopt"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("-c,--config", global.config_path, "Config file (key = value lines)");
  app.add_option("--set", global.overrides, "Override a config key, as key=value")->take_all();
  app.add_option("--seed", global.seed, "Override base_seed, mc_seed and init_seed");
  app.add_option("-o,--out", global.out_dir, "Output directory");

  auto* dstar = app.add_subcommand("dstar", "Optimal French threshold and the finite-horizon thresholds");

  std::string pattern_path;
  bool star = false;
  int value_horizon = 0;
  auto* value = app.add_subcommand("value", "Closed-form Poisson-model value");
  value->add_option("-p,--pattern", pattern_path, "Initial pattern CSV (x,y,mark); empty if omitted");
  auto* star_flag = value->add_flag("--star", star, "Infinite-horizon optimal value");
  auto* horizon_opt = value->add_option("--horizon", value_horizon, "Finite horizon n")->check(CLI::PositiveNumber);
  star_flag->excludes(horizon_opt);

  int n_max = 0;
  auto* bounds = app.add_subcommand("bounds", "Hard-core model lower/upper value bounds");
  bounds->add_option("-p,--pattern", pattern_path, "Initial pattern CSV");
  bounds->add_option("--n-max", n_max, "Largest horizon (default: config n_max)")->check(CLI::PositiveNumber);

  std::string policy_spec = "french:dstar";
  int sim_horizon = -1;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of a policy's discounted value");
  simulate->add_option("-p,--pattern", pattern_path, "Initial pattern CSV");
  simulate->add_option("--policy", policy_spec, "Policy spec")->capture_default_str();
  simulate->add_option("--horizon", sim_horizon, "Simulated epochs (0: certified)")->check(CLI::NonNegativeNumber);

  auto* figure1 = app.add_subcommand("figure1", "Sparse and dense hard-core bounds curves");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    Context ctx{.cfg = {}, .out_dir = {}, .out = out, .err = err};
    if (!global.config_path.empty()) ctx.cfg = load_run_config(global.config_path);
    for (const auto& kv : global.overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ParseError("--set expects key=value, got '" + kv + "'");
      apply_setting(ctx.cfg, std::string_view(kv).substr(0, eq), std::string_view(kv).substr(eq + 1));
    }
    if (global.seed) ctx.cfg.set_seed(*global.seed);
    if (sim_horizon >= 0) ctx.cfg.horizon = sim_horizon;
    validate_run_config(ctx.cfg);

    if (!global.out_dir.empty()) ctx.out_dir = global.out_dir;
    else if (!ctx.cfg.out_dir.empty()) ctx.out_dir = ctx.cfg.out_dir;
    else if (const char* env = std::getenv(kOutDirEnv); env && *env) ctx.out_dir = env;

    if (dstar->parsed()) return cmd_dstar(ctx);
    if (value->parsed()) {
      if (!star && value_horizon == 0) throw ParseError("value: pass --star or --horizon n");
      return cmd_value(ctx, pattern_path, star, value_horizon);
    }
    if (bounds->parsed()) return cmd_bounds(ctx, pattern_path, n_max > 0 ? n_max : ctx.cfg.n_max);
    if (simulate->parsed()) return cmd_simulate(ctx, pattern_path, policy_spec);
    if (figure1->parsed()) return cmd_figure1(ctx);
    return kExitInput;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << '\n';
    return kExitUnexpected;
  }
}

}  // namespace thinopt::cli
