#include <doctest.h>

#include <cmath>
#include <sstream>

#include "thinopt/analytic_poisson.hpp"
#include "thinopt/errors.hpp"
#include "thinopt/numeric_format.hpp"
#include "thinopt/simulate.hpp"

using namespace thinopt;

namespace {

ModelParams no_births() {
  ModelParams p;
  p.beta = 0.0;
  return p;
}

SimConfig config(const ModelParams& p, Policy policy, Pattern initial, int horizon, std::size_t reps) {
  return SimConfig{.horizon = horizon,
                   .replications = reps,
                   .base_seed = 123,
                   .kernel = Kernel::poisson(p),
                   .policy = std::move(policy),
                   .initial = std::move(initial),
                   .workers = 1};
}

const Pattern kTwo({{{1, 1}, 0.05}, {{2, 2}, 0.03}});

}  // namespace

TEST_CASE("trivial trajectories") {
  const auto p = no_births();
  CHECK(run_trajectory(config(p, Policy::keep_all(), kTwo, 30, 2), 0) == 0.0);
  CHECK(run_trajectory(config(p, Policy::remove_all(), kTwo, 1, 2), 0) == doctest::Approx(0.08));
  const auto r = estimate_value(config(p, Policy::french(0.05), Pattern{}, 20, 10));
  CHECK(r.mean == 0.0);
  CHECK(r.std_error == 0.0);
}

TEST_CASE("single point under the optimal threshold earns s(m) on average") {
  const auto p = no_births();
  const double m = 0.03;
  const auto cfg = config(p, Policy::french(d_star(p).value), Pattern({{{1, 1}, m}}), 200, 100000);
  const auto r = estimate_value(cfg);
  CHECK(std::abs(r.mean - s_inf(m, p).value) <= 3 * r.std_error + r.truncation_bound);
  CHECK(r.truncation_bound < 1e-10);
}

TEST_CASE("results are bit-identical across repeats and worker counts") {
  ModelParams p;
  auto cfg = config(p, Policy::german(0.05, 0.3), kTwo, 15, 64);
  const auto a = estimate_value(cfg);
  cfg.workers = 4;
  const auto b = estimate_value(cfg);
  cfg.workers = 0;
  const auto c = estimate_value(cfg);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.per_epoch_means == b.per_epoch_means);
  CHECK(a.mean == c.mean);
  CHECK(run_trajectory(cfg, 5) == run_trajectory(cfg, 5));
}

TEST_CASE("result metadata") {
  ModelParams p;
  const auto cfg = config(p, Policy::keep_all(), kTwo, 12, 4);
  const auto r = estimate_value(cfg);
  CHECK(r.replications == 4);
  CHECK(r.horizon == 12);
  CHECK(r.policy == "keepall");
  CHECK(r.truncation_bound == tail_bound(kTwo, 11, p));
  CHECK(r.per_epoch_means.size() == 12);
  CHECK(r.mean == 0.0);
}

TEST_CASE("per-epoch means discount back to the mean") {
  ModelParams p;
  const auto r = estimate_value(config(p, Policy::french(0.06), kTwo, 25, 50));
  double discounted = 0.0, w = 1.0;
  for (double v : r.per_epoch_means) {
    discounted += w * v;
    w *= p.alpha;
  }
  CHECK(discounted == doctest::Approx(r.mean).epsilon(1e-12));
}

TEST_CASE("value curve: first point, monotone prefix sums, consistency") {
  ModelParams p;
  const auto cfg = config(p, Policy::remove_all(), kTwo, 1, 20);
  const auto curve = value_curve(cfg, 15);
  REQUIRE(curve.size() == 15);
  CHECK(curve[0].n == 1);
  CHECK(curve[0].mean == mark_sum(kTwo));
  CHECK(curve[0].std_error == 0.0);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].mean >= curve[i - 1].mean);
  auto fixed = cfg;
  fixed.horizon = 15;
  CHECK(estimate_value(fixed).mean == doctest::Approx(curve.back().mean).epsilon(1e-13));
}

TEST_CASE("suboptimal threshold is visibly worse than the optimal one") {
  ModelParams p;
  const double d = d_star(p).value;
  const int T = certified_horizon(Pattern{}, p);
  const auto best = estimate_value(config(p, Policy::french(d), Pattern{}, T, 2000));
  const auto half = estimate_value(config(p, Policy::french(0.5 * d), Pattern{}, T, 2000));
  const double v_star = v_star_poisson(Pattern{}, p).total;
  CHECK(std::abs(best.mean - v_star) <= 3 * best.std_error + best.truncation_bound);
  CHECK(v_star - half.mean > 3 * half.std_error);
  CHECK(half.mean - 3 * half.std_error <= lemma1_bound(Pattern{}, p));
}

TEST_CASE("preconditions") {
  ModelParams p;
  CHECK_THROWS_AS(estimate_value(config(p, Policy::keep_all(), kTwo, 0, 10)), PreconditionError);
  CHECK_THROWS_AS(estimate_value(config(p, Policy::keep_all(), kTwo, 5, 1)), PreconditionError);
  CHECK_THROWS_AS(value_curve(config(p, Policy::keep_all(), kTwo, 5, 10), 0), PreconditionError);
  auto hc = config(p, Policy::keep_all(), Pattern({{{1, 1}, 0.01}, {{1.05, 1}, 0.01}}), 5, 4);
  hc.kernel = Kernel::hardcore(p);
  CHECK_THROWS_AS(estimate_value(hc), PreconditionError);
}

TEST_CASE("sim result CSV") {
  ModelParams p;
  const auto r = estimate_value(config(p, Policy::remove_all(), kTwo, 1, 2));
  std::ostringstream out;
  write_sim_result_csv(out, {r});
  CHECK(out.str() == "policy,mean,std_error,replications,horizon,truncation_bound\nremoveall,0.08,0,2,1," +
                         format_double(r.truncation_bound) + "\n");
}
