#include "run_config.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "thinopt/errors.hpp"
#include "thinopt/numeric_format.hpp"

namespace thinopt::cli {
namespace {

using Setter = std::function<void(RunConfig&, std::string_view)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct KeySpec {
  std::string name;
  Setter set;
  Getter get;
};

double real_value(std::string_view key, std::string_view text) {
  auto v = parse_double(text);
  if (!v) throw ParseError(std::string(key) + ": expected a real number, got '" + std::string(text) + "'");
  return *v;
}

long long integer_value(std::string_view key, std::string_view text, long long lo) {
  auto v = parse_integer(text);
  if (!v) throw ParseError(std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
  if (*v < lo) throw ParseError(std::string(key) + ": must be >= " + std::to_string(lo));
  return *v;
}

std::uint64_t seed_value(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto t = trim(text);
  std::istringstream in{std::string(t)};
  if (t.empty() || t.front() == '-' || !(in >> v) || !in.eof())
    throw ParseError(std::string(key) + ": expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

KeySpec real_key(std::string name, double ModelParams::*field) {
  return {name,
          [name, field](RunConfig& c, std::string_view v) { c.model.*field = real_value(name, v); },
          [field](const RunConfig& c) { return format_double(c.model.*field); }};
}

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = [] {
    std::vector<KeySpec> t;
    t.push_back(real_key("K", &ModelParams::K));
    t.push_back(real_key("lambda", &ModelParams::lambda));
    t.push_back(real_key("p_d", &ModelParams::p_d));
    t.push_back(real_key("beta", &ModelParams::beta));
    t.push_back(real_key("alpha", &ModelParams::alpha));
    t.push_back(real_key("R", &ModelParams::R));
    t.push_back({"window",
                 [](RunConfig& c, std::string_view v) {
                   std::istringstream in{std::string(v)};
                   std::vector<double> xs;
                   std::string tok;
                   while (in >> tok) xs.push_back(real_value("window", tok));
                   if (xs.size() != 4) throw ParseError("window: expected four reals 'x_min y_min x_max y_max'");
                   try {
                     c.model.window = Window(xs[0], xs[1], xs[2], xs[3]);
                   } catch (const PreconditionError& e) {
                     throw ParseError(std::string("window: ") + e.what());
                   }
                 },
                 [](const RunConfig& c) {
                   const auto& w = c.model.window;
                   return format_double(w.x_min()) + ' ' + format_double(w.y_min()) + ' ' +
                          format_double(w.x_max()) + ' ' + format_double(w.y_max());
                 }});
    t.push_back({"mark_law",
                 [](RunConfig& c, std::string_view v) {
                   try {
                     c.model.mark_law = MarkLaw::parse(v);
                   } catch (const std::exception& e) {
                     throw ParseError(std::string("mark_law: ") + e.what());
                   }
                 },
                 [](const RunConfig& c) { return c.model.mark_law.to_string(); }});
    t.push_back({"kernel",
                 [](RunConfig& c, std::string_view v) {
                   if (v == "poisson") c.kernel = KernelChoice::Poisson;
                   else if (v == "hardcore") c.kernel = KernelChoice::Hardcore;
                   else throw ParseError("kernel: expected 'poisson' or 'hardcore', got '" + std::string(v) + "'");
                 },
                 [](const RunConfig& c) {
                   return std::string(c.kernel == KernelChoice::Poisson ? "poisson" : "hardcore");
                 }});
    t.push_back({"integration",
                 [](RunConfig& c, std::string_view v) {
                   if (v == "mc") c.integration = MonteCarlo{};
                   else if (v == "quadrature") c.integration = Quadrature{};
                   else throw ParseError("integration: expected 'mc' or 'quadrature', got '" + std::string(v) + "'");
                 },
                 [](const RunConfig& c) {
                   return std::string(std::holds_alternative<MonteCarlo>(c.integration) ? "mc" : "quadrature");
                 }});
    t.push_back({"quad_tol", [](RunConfig& c, std::string_view v) { c.quad_tol = real_value("quad_tol", v); },
                 [](const RunConfig& c) { return format_double(c.quad_tol); }});
    t.push_back({"mc_samples",
                 [](RunConfig& c, std::string_view v) {
                   c.mc_samples = static_cast<std::size_t>(integer_value("mc_samples", v, 1));
                 },
                 [](const RunConfig& c) { return std::to_string(c.mc_samples); }});
    t.push_back({"mc_seed", [](RunConfig& c, std::string_view v) { c.mc_seed = seed_value("mc_seed", v); },
                 [](const RunConfig& c) { return std::to_string(c.mc_seed); }});
    t.push_back({"horizon",
                 [](RunConfig& c, std::string_view v) {
                   c.horizon = static_cast<int>(integer_value("horizon", v, 0));
                 },
                 [](const RunConfig& c) { return std::to_string(c.horizon); }});
    t.push_back({"replications",
                 [](RunConfig& c, std::string_view v) {
                   c.replications = static_cast<std::size_t>(integer_value("replications", v, 2));
                 },
                 [](const RunConfig& c) { return std::to_string(c.replications); }});
    t.push_back({"base_seed", [](RunConfig& c, std::string_view v) { c.base_seed = seed_value("base_seed", v); },
                 [](const RunConfig& c) { return std::to_string(c.base_seed); }});
    t.push_back({"workers",
                 [](RunConfig& c, std::string_view v) {
                   c.workers = static_cast<unsigned>(integer_value("workers", v, 0));
                 },
                 [](const RunConfig& c) { return std::to_string(c.workers); }});
    t.push_back({"n_max",
                 [](RunConfig& c, std::string_view v) { c.n_max = static_cast<int>(integer_value("n_max", v, 1)); },
                 [](const RunConfig& c) { return std::to_string(c.n_max); }});
    t.push_back({"out_dir", [](RunConfig& c, std::string_view v) { c.out_dir = std::string(v); },
                 [](const RunConfig& c) { return c.out_dir; }});
    t.push_back({"sparse_intensity",
                 [](RunConfig& c, std::string_view v) { c.sparse_intensity = real_value("sparse_intensity", v); },
                 [](const RunConfig& c) { return format_double(c.sparse_intensity); }});
    t.push_back({"dense_intensity",
                 [](RunConfig& c, std::string_view v) { c.dense_intensity = real_value("dense_intensity", v); },
                 [](const RunConfig& c) { return format_double(c.dense_intensity); }});
    t.push_back({"gibbs_sweeps",
                 [](RunConfig& c, std::string_view v) {
                   c.gibbs_sweeps = static_cast<int>(integer_value("gibbs_sweeps", v, 1));
                 },
                 [](const RunConfig& c) { return std::to_string(c.gibbs_sweeps); }});
    t.push_back({"init_seed", [](RunConfig& c, std::string_view v) { c.init_seed = seed_value("init_seed", v); },
                 [](const RunConfig& c) { return std::to_string(c.init_seed); }});
    return t;
  }();
  return table;
}

const KeySpec* find_key(std::string_view key) {
  for (const auto& k : key_table())
    if (k.name == key) return &k;
  return nullptr;
}

}  // namespace

IntegrationSpec RunConfig::integration_spec() const {
  if (std::holds_alternative<Quadrature>(integration)) return Quadrature{quad_tol};
  return MonteCarlo{mc_samples, mc_seed};
}

void RunConfig::set_seed(std::uint64_t seed) {
  base_seed = seed;
  mc_seed = seed;
  init_seed = seed;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& k : key_table()) out.push_back(k.name);
    return out;
  }();
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  const auto* spec = find_key(trim(key));
  if (!spec) throw ParseError("unknown key '" + std::string(trim(key)) + "'");
  spec->set(cfg, trim(value));
}

RunConfig parse_run_config(std::istream& in, std::string_view source) {
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(where + "expected 'key = value'");
    try {
      apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  return parse_run_config(in, path);
}

void validate_run_config(const RunConfig& cfg) {
  cfg.model.validate();
  if (!(cfg.quad_tol > 0.0)) throw PreconditionError("quad_tol: must be > 0");
  if (!(cfg.sparse_intensity > 0.0)) throw PreconditionError("sparse_intensity: must be > 0");
  if (!(cfg.dense_intensity > 0.0)) throw PreconditionError("dense_intensity: must be > 0");
}

std::string to_text(const RunConfig& cfg) {
  std::string out;
  for (const auto& k : key_table()) out += k.name + " = " + k.get(cfg) + "\n";
  return out;
}

}  // namespace thinopt::cli
