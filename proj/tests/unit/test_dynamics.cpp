#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "thinopt/dynamics.hpp"
#include "thinopt/errors.hpp"

using namespace thinopt;

namespace {

const ModelParams kBase{};

ModelParams with(double beta, MarkLaw law = MarkLaw::scaled_beta(2, 20)) {
  ModelParams p;
  p.beta = beta;
  p.mark_law = law;
  return p;
}

bool within_3se(const std::vector<double>& xs, double target) {
  const auto s = oracle::mean_se(xs);
  return std::abs(s.mean - target) <= 3 * s.se;
}

}  // namespace

TEST_CASE("sample_mark: point mass, scaled beta mean, uniform KS") {
  RngStream rng(1, 0);
  for (int i = 0; i < 100; ++i) CHECK(sample_mark(MarkLaw::point_mass(0.05), 0.1, rng) == 0.05);

  std::vector<double> beta_draws(1000000);
  for (auto& v : beta_draws) {
    v = sample_mark(MarkLaw::scaled_beta(2, 20), 0.1, rng);
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 0.1);
  }
  CHECK(within_3se(beta_draws, 0.1 * 2.0 / 22.0));

  std::vector<double> uni(100000);
  for (auto& v : uni) v = sample_mark(MarkLaw::uniform(), 0.1, rng);
  const double d = oracle::ks_statistic(uni, [](double m) { return std::clamp(m / 0.1, 0.0, 1.0); });
  CHECK(d < 1.628 / std::sqrt(100000.0));  // 1% critical value
}

TEST_CASE("poisson births: count moments and newborn mark sum") {
  const Kernel k = Kernel::poisson(with(1.0));
  std::vector<double> counts, mark_sums;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    RngStream rng(2, s);
    const Pattern y = step_poisson(Pattern{}, k, rng);
    counts.push_back(static_cast<double>(y.size()));
    mark_sums.push_back(mark_sum(y));
    for (const auto& pt : y) {
      REQUIRE(kBase.window.contains(pt.location));
      REQUIRE(pt.mark >= 0.0);
      REQUIRE(pt.mark <= 0.1);
    }
  }
  CHECK(within_3se(counts, 25.0));
  const auto c = oracle::mean_se(counts);
  double var = 0.0;
  for (double v : counts) var += (v - c.mean) * (v - c.mean);
  var /= counts.size() - 1;
  // Var of the sample variance of a Poisson(25) count is about (2 mu^2 + mu) / N.
  CHECK(std::abs(var - 25.0) <= 3 * std::sqrt((2 * 625.0 + 25.0) / counts.size()));
  CHECK(within_3se(mark_sums, 25.0 * 0.1 * 2.0 / 22.0));
}

TEST_CASE("poisson survivors die with probability p_d and grow exactly") {
  const Kernel k = Kernel::poisson(with(0.0));
  const Pattern x({{{1, 1}, 0.03}});
  const double grown = kBase.logistic_growth().step(0.03);
  std::vector<double> alive;
  for (std::uint64_t s = 0; s < 100000; ++s) {
    RngStream rng(3, s);
    const Pattern y = step_poisson(x, k, rng);
    REQUIRE(y.size() <= 1);
    if (y.size() == 1) {
      REQUIRE(y[0].mark == grown);
      REQUIRE(y[0].location == x[0].location);
    }
    alive.push_back(static_cast<double>(y.size()));
  }
  CHECK(within_3se(alive, 0.95));

  ModelParams doomed = with(0.0);
  doomed.p_d = 1 - 1e-12;
  const Kernel kd = Kernel::poisson(doomed);
  int survivors = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    RngStream rng(4, s);
    survivors += static_cast<int>(step_poisson(x, kd, rng).size());
  }
  CHECK(survivors == 0);
}

TEST_CASE("steps are deterministic for a given stream") {
  for (const Kernel& k : {Kernel::poisson(with(2.0)), Kernel::hardcore(with(4.3))}) {
    RngStream a(9, 1), b(9, 1);
    Pattern x, y;
    for (int i = 0; i < 20; ++i) {
      x = step(x, k, a);
      y = step(y, k, b);
      REQUIRE(x.points() == y.points());
    }
  }
}

TEST_CASE("hard-core steps always produce hard-core patterns") {
  for (double beta : {1.0, 4.3, 30.0}) {
    const Kernel k = Kernel::hardcore(with(beta));
    RngStream init(10, 0);
    Pattern x = sample_hardcore_gibbs(kBase.window, beta, kBase.K, 100, kBase.mark_law, kBase.K, init).pattern;
    for (int i = 0; i < 3400; ++i) {
      RngStream rng(11, static_cast<std::uint64_t>(i));
      x = step_hardcore(x, k, rng);
      REQUIRE(is_hardcore(x, kBase.K));
      for (const auto& pt : x) REQUIRE(pt.mark <= kBase.K);
    }
  }
}

TEST_CASE("hard-core step rejects an invalid retained pattern") {
  const Kernel k = Kernel::hardcore(with(1.0));
  RngStream rng(1, 1);
  CHECK_THROWS_AS(step_hardcore(Pattern({{{1, 1}, 0.01}, {{1.05, 1}, 0.01}}), k, rng), PreconditionError);
}

TEST_CASE("hard-core births avoid retained points") {
  // A 0.14-spaced lattice leaves only small gaps for newborns.
  ModelParams p = with(4.0);
  p.window = Window{0, 0, 1, 1};
  p.p_d = 1e-9;
  Pattern lattice;
  for (int i = 0; i <= 7; ++i)
    for (int j = 0; j <= 7; ++j) lattice.push_back({{0.14 * i, 0.14 * j}, 0.1});
  REQUIRE(is_hardcore(lattice, 0.1));
  const Kernel k = Kernel::hardcore(p);
  std::size_t births = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    RngStream rng(12, s);
    const Pattern y = step_hardcore(lattice, k, rng);
    births += y.size() > lattice.size() ? y.size() - lattice.size() : 0;
    for (const auto& pt : y) {
      bool is_old = false;
      for (const auto& old : lattice) is_old = is_old || old.location == pt.location;
      if (!is_old) {
        for (const auto& old : lattice) REQUIRE(distance(old.location, pt.location) > 0.1);
      }
    }
  }
  CHECK(births < 500 * 8);
}

TEST_CASE("hard-core births behave like Poisson births when rare") {
  const Kernel k = Kernel::hardcore(with(0.01 / 25));
  std::vector<double> counts;
  for (std::uint64_t s = 0; s < 20000; ++s) {
    RngStream rng(13, s);
    counts.push_back(static_cast<double>(step_hardcore(Pattern{}, k, rng).size()));
  }
  CHECK(within_3se(counts, 0.01));
}

TEST_CASE("gibbs sampler limits") {
  RngStream rng(14, 0);
  int nonempty = 0;
  for (int i = 0; i < 50; ++i) {
    nonempty += sample_hardcore_gibbs(kBase.window, 1e-9, 0.1, 20, kBase.mark_law, 0.1, rng).pattern.empty() ? 0 : 1;
  }
  CHECK(nonempty == 0);
  for (int i = 0; i < 20; ++i) {
    CHECK(sample_hardcore_gibbs(kBase.window, 2.0, 10.0, 20, kBase.mark_law, 0.1, rng).pattern.size() <= 1);
  }
}

TEST_CASE("gibbs sampler approaches the Poisson intensity for a tiny hard core") {
  std::vector<double> intensity;
  for (std::uint64_t s = 0; s < 200; ++s) {
    RngStream rng(15, s);
    intensity.push_back(
        sample_hardcore_gibbs(kBase.window, 2.0, 1e-6, 30, kBase.mark_law, 0.1, rng).empirical_intensity);
  }
  CHECK(within_3se(intensity, 2.0));
}

TEST_CASE("gibbs samples are hard-core with marks from the law") {
  RngStream rng(16, 0);
  const auto s = sample_hardcore_gibbs(kBase.window, 5.0, 0.1, 100, MarkLaw::point_mass(0.02), 0.1, rng);
  CHECK(is_hardcore(s.pattern, 0.1));
  CHECK(s.empirical_intensity == doctest::Approx(s.pattern.size() / 25.0));
  for (const auto& pt : s.pattern) CHECK(pt.mark == 0.02);
}

TEST_CASE("activity calibration hits the target intensity") {
  for (double target : {1.0, 4.3}) {
    const auto cal = calibrate_hardcore_activity(kBase.window, target, 0.1, 17);
    CHECK(cal.estimated_intensity == doctest::Approx(target).epsilon(0.02));
    CHECK(cal.activity >= target);
    // Independent check: mean intensity of fresh samples at the calibrated activity.
    std::vector<double> intensity;
    for (std::uint64_t s = 0; s < 100; ++s) {
      RngStream rng(18, s);
      intensity.push_back(
          sample_hardcore_gibbs(kBase.window, cal.activity, 0.1, 100, kBase.mark_law, 0.1, rng).empirical_intensity);
    }
    const auto m = oracle::mean_se(intensity);
    CHECK(std::abs(m.mean - target) <= 3 * m.se + 0.02 * target);
  }
}
