#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "thinopt/model.hpp"

namespace thinopt::cli {

enum class KernelChoice { Poisson, Hardcore };

struct RunConfig {
  ModelParams model;

  KernelChoice kernel = KernelChoice::Poisson;
  IntegrationSpec integration = MonteCarlo{};
  double quad_tol = 1e-9;
  std::size_t mc_samples = 1000;
  std::uint64_t mc_seed = 0;

  int horizon = 0;  // 0: smallest certified horizon
  std::size_t replications = 1000;
  std::uint64_t base_seed = 0;
  unsigned workers = 0;
  int n_max = 50;
  std::string out_dir;

  double sparse_intensity = 1.0;
  double dense_intensity = 4.3;
  int gibbs_sweeps = 200;
  std::uint64_t init_seed = 0;

  // Integration spec with the tolerance / sample settings applied.
  IntegrationSpec integration_spec() const;
  void set_seed(std::uint64_t seed);
};

// Recognised keys, in serialisation order.
const std::vector<std::string>& config_keys();

// Applies one `key = value` assignment. Throws ParseError naming the key.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

// Parses `key = value` lines; `#` starts a comment. Errors name the line.
RunConfig parse_run_config(std::istream& in, std::string_view source = "config");
RunConfig load_run_config(const std::string& path);

// Validates model and run settings; throws PreconditionError naming the key.
void validate_run_config(const RunConfig& cfg);

std::string to_text(const RunConfig& cfg);

}  // namespace thinopt::cli
