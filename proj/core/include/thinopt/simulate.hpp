#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "thinopt/dynamics.hpp"
#include "thinopt/pattern.hpp"
#include "thinopt/policy.hpp"

namespace thinopt {

struct SimConfig {
  int horizon = 1;
  std::size_t replications = 2;
  std::uint64_t base_seed = 0;
  Kernel kernel;
  Policy policy;
  Pattern initial;
  unsigned workers = 0;  // 0: one per hardware thread
};

struct SimResult {
  std::string policy;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;
  int horizon = 0;
  // Bound on the expected discounted reward of epochs >= horizon.
  double truncation_bound = 0.0;
  // Mean undiscounted reward at each epoch.
  std::vector<double> per_epoch_means;
};

struct Trajectory {
  double discounted_total = 0.0;
  std::vector<double> epoch_rewards;  // undiscounted
};

/// One replication: at epochs i = 0..T-1 act, accrue alpha^i * reward and
/// transition, using stream (base_seed, rep_id * T + i) for epoch i.
Trajectory trace_trajectory(const SimConfig& cfg, std::uint64_t rep_id);
double run_trajectory(const SimConfig& cfg, std::uint64_t rep_id);

/// Mean and standard error over replications 0..replications-1. The
/// reduction runs in rep_id order, so results do not depend on `workers`.
SimResult estimate_value(const SimConfig& cfg);

struct CurvePoint {
  int n = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// n-horizon discounted values for n = 1..n_max from the prefix sums of the
/// same trajectories (run with horizon n_max).
std::vector<CurvePoint> value_curve(const SimConfig& cfg, int n_max);

// CSV `policy,mean,std_error,replications,horizon,truncation_bound`.
void write_sim_result_csv(std::ostream& out, const std::vector<SimResult>& results);

}  // namespace thinopt
