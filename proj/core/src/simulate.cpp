#include "thinopt/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "thinopt/analytic_poisson.hpp"
#include "thinopt/errors.hpp"
#include "thinopt/numeric_format.hpp"
#include "statistics.hpp"

namespace thinopt {
namespace {

// Runs fn(rep) for every rep in [0, count), spreading work over threads.
template <class Fn>
void for_each_replication(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t rep = 0; rep < count; ++rep) fn(rep);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t rep = next++; rep < count; rep = next++) {
          try {
            fn(rep);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void check_config(const SimConfig& cfg) {
  if (cfg.horizon < 1) throw PreconditionError("simulation: horizon must be >= 1");
  if (cfg.replications < 1) throw PreconditionError("simulation: replications must be >= 1");
}

}  // namespace

Trajectory trace_trajectory(const SimConfig& cfg, std::uint64_t rep_id) {
  check_config(cfg);
  const auto& p = cfg.kernel.params();
  const auto horizon = static_cast<std::uint64_t>(cfg.horizon);
  Trajectory out;
  out.epoch_rewards.reserve(horizon);
  Pattern state = cfg.initial;
  double discount = 1.0;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    RngStream rng(cfg.base_seed, rep_id * horizon + i);
    const Action a = cfg.policy.act(state, static_cast<std::size_t>(i), rng);
    const double r = reward(state, a, p.R);
    out.epoch_rewards.push_back(r);
    out.discounted_total += discount * r;
    discount *= p.alpha;
    if (i + 1 < horizon) state = step(apply_action(state, a), cfg.kernel, rng);
  }
  return out;
}

double run_trajectory(const SimConfig& cfg, std::uint64_t rep_id) {
  return trace_trajectory(cfg, rep_id).discounted_total;
}

SimResult estimate_value(const SimConfig& cfg) {
  check_config(cfg);
  if (cfg.replications < 2) throw PreconditionError("estimate_value: replications must be >= 2");
  std::vector<Trajectory> runs(cfg.replications);
  for_each_replication(cfg.replications, cfg.workers,
                       [&](std::size_t rep) { runs[rep] = trace_trajectory(cfg, rep); });

  SimResult result;
  result.policy = cfg.policy.name();
  result.replications = cfg.replications;
  result.horizon = cfg.horizon;
  result.truncation_bound = tail_bound(cfg.initial, cfg.horizon - 1, cfg.kernel.params());

  const auto totals = detail::sample_stats(runs.size(), [&](std::size_t r) { return runs[r].discounted_total; });
  result.mean = totals.mean;
  result.std_error = totals.std_error;

  result.per_epoch_means.assign(static_cast<std::size_t>(cfg.horizon), 0.0);
  for (std::size_t i = 0; i < result.per_epoch_means.size(); ++i) {
    result.per_epoch_means[i] =
        detail::sample_stats(runs.size(), [&](std::size_t r) { return runs[r].epoch_rewards[i]; }).mean;
  }
  return result;
}

std::vector<CurvePoint> value_curve(const SimConfig& cfg, int n_max) {
  if (n_max < 1) throw PreconditionError("value_curve: n_max must be >= 1");
  SimConfig run_cfg = cfg;
  run_cfg.horizon = n_max;
  check_config(run_cfg);

  const double alpha = cfg.kernel.params().alpha;
  const auto steps = static_cast<std::size_t>(n_max);
  // prefix[rep][n-1] = discounted reward of the first n epochs.
  std::vector<std::vector<double>> prefix(run_cfg.replications);
  for_each_replication(run_cfg.replications, run_cfg.workers, [&](std::size_t rep) {
    const auto run = trace_trajectory(run_cfg, rep);
    auto& row = prefix[rep];
    row.resize(steps);
    double acc = 0.0;
    double discount = 1.0;
    for (std::size_t i = 0; i < steps; ++i) {
      acc += discount * run.epoch_rewards[i];
      discount *= alpha;
      row[i] = acc;
    }
  });

  std::vector<CurvePoint> curve;
  for (std::size_t i = 0; i < steps; ++i) {
    const auto stats = detail::sample_stats(prefix.size(), [&](std::size_t r) { return prefix[r][i]; });
    curve.push_back({static_cast<int>(i) + 1, stats.mean, stats.std_error});
  }
  return curve;
}

void write_sim_result_csv(std::ostream& out, const std::vector<SimResult>& results) {
  out << "policy,mean,std_error,replications,horizon,truncation_bound\n";
  for (const auto& r : results) {
    out << r.policy << ',' << format_double(r.mean) << ',' << format_double(r.std_error) << ','
        << r.replications << ',' << r.horizon << ',' << format_double(r.truncation_bound) << '\n';
  }
}

}  // namespace thinopt
