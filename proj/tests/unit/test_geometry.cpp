#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "thinopt/errors.hpp"
#include "thinopt/geometry.hpp"

using namespace thinopt;

namespace {
const double kPi = std::numbers::pi;
const Window kW5{0.0, 0.0, 5.0, 5.0};
}  // namespace

TEST_CASE("window area") {
  CHECK(window_area(kW5) == 25.0);
  CHECK(window_area(Window{}) == 1.0);
  CHECK(window_area(Window{0, 0, 2, 3}) == 6.0);
}

TEST_CASE("window rejects degenerate or non-finite bounds") {
  CHECK_THROWS_AS(Window(0, 0, 0, 1), PreconditionError);
  CHECK_THROWS_AS(Window(0, 1, 1, 0), PreconditionError);
  CHECK_THROWS_AS(Window(0, 0, std::numeric_limits<double>::infinity(), 1), PreconditionError);
  CHECK_THROWS_AS(Window(std::nan(""), 0, 1, 1), PreconditionError);
}

TEST_CASE("window contains is boundary inclusive") {
  CHECK(kW5.contains({0, 0}));
  CHECK(kW5.contains({5, 5}));
  CHECK(kW5.contains({2.5, 5}));
  CHECK_FALSE(kW5.contains({5.0000001, 1}));
  CHECK_FALSE(kW5.contains({-1e-12, 1}));
}

TEST_CASE("ball window area: symmetric cases") {
  CHECK(ball_window_area({2.5, 2.5}, 0.1, kW5) == doctest::Approx(kPi * 0.01).epsilon(1e-14));
  CHECK(ball_window_area({0, 0}, 0.1, kW5) == doctest::Approx(kPi * 0.01 / 4).epsilon(1e-13));
  CHECK(ball_window_area({2.5, 0}, 0.1, kW5) == doctest::Approx(kPi * 0.01 / 2).epsilon(1e-13));
  CHECK(ball_window_area({5, 2.5}, 0.1, kW5) == doctest::Approx(kPi * 0.01 / 2).epsilon(1e-13));
  CHECK(ball_window_area({5, 5}, 0.1, kW5) == doctest::Approx(kPi * 0.01 / 4).epsilon(1e-13));
}

TEST_CASE("ball window area near a corner matches the frozen oracle value") {
  // Chord-length integral evaluated at 30 digits: 0.019920096408879665...
  const double frozen = 0.0199200964088796651;
  CHECK(std::abs(ball_window_area({0.05, 0.05}, 0.1, kW5) - frozen) < 1e-12);
  CHECK(std::abs(oracle::disc_rect_area(0.05, 0.05, 0.1, 0, 0, 5, 5) - frozen) < 1e-10);
}

TEST_CASE("ball window area: disc outside or covering the window") {
  CHECK(ball_window_area({10, 10}, 0.5, kW5) == 0.0);
  CHECK(ball_window_area({-0.2, 2.5}, 0.1, kW5) == 0.0);
  // Disc touching only at a single point has zero area.
  CHECK(ball_window_area({-0.1, 2.5}, 0.1, kW5) == doctest::Approx(0.0));
  // All four corners inside the disc.
  CHECK(ball_window_area({2.5, 2.5}, 4.0, kW5) == doctest::Approx(25.0).epsilon(1e-14));
  CHECK(ball_window_area({0.3, 0.4}, 2.0, Window{}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ball window area rejects non-positive radius") {
  CHECK_THROWS_AS(ball_window_area({1, 1}, 0.0, kW5), PreconditionError);
  CHECK_THROWS_AS(ball_window_area({1, 1}, -1.0, kW5), PreconditionError);
}

TEST_CASE("ball window area agrees with the quadrature oracle on random cases") {
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x0 = -2 + 4 * u(gen), y0 = -2 + 4 * u(gen);
    const Window w{x0, y0, x0 + 0.2 + 3 * u(gen), y0 + 0.2 + 3 * u(gen)};
    const double r = 0.01 + 2.5 * u(gen);
    const Point2 c{w.x_min() - 1 + (w.width() + 2) * u(gen), w.y_min() - 1 + (w.height() + 2) * u(gen)};
    const double got = ball_window_area(c, r, w);
    const double want = oracle::disc_rect_area(c.x, c.y, r, w.x_min(), w.y_min(), w.x_max(), w.y_max());
    CHECK(std::abs(got - want) < 1e-6);
    CHECK(got >= 0.0);
    CHECK(got <= std::min(kPi * r * r, w.area()) + 1e-15);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("ball window area is nondecreasing in the radius") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const Point2 c{u(gen), u(gen)};
    double prev = 0.0;
    for (double r = 0.01; r < 8.0; r *= 1.1) {
      const double a = ball_window_area(c, r, kW5);
      CHECK(a >= prev - 1e-12);
      prev = a;
    }
  }
}

TEST_CASE("ball window area is translation invariant") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Point2 c{-0.5 + 6 * u(gen), -0.5 + 6 * u(gen)};
    const double r = 0.05 + 2 * u(gen);
    const double dx = -10 + 20 * u(gen), dy = -10 + 20 * u(gen);
    const Window shifted{dx, dy, 5 + dx, 5 + dy};
    const double a = ball_window_area(c, r, kW5);
    const double b = ball_window_area({c.x + dx, c.y + dy}, r, shifted);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
  }
}

TEST_CASE("min pairwise distance") {
  CHECK(min_pairwise_distance(std::vector<Point2>{}) == std::numeric_limits<double>::infinity());
  CHECK(min_pairwise_distance(std::vector<Point2>{{1, 1}}) == std::numeric_limits<double>::infinity());
  CHECK(min_pairwise_distance(std::vector<Point2>{{0, 0}, {3, 4}}) == 5.0);
  CHECK(min_pairwise_distance(std::vector<Point2>{{0, 0}, {1, 0}, {0, 0.5}}) == 0.5);
}

TEST_CASE("min pairwise distance matches brute force") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point2> pts(2 + trial * 7);
    for (auto& p : pts) p = {u(gen), u(gen)};
    double brute = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        brute = std::min(brute, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
    CHECK(min_pairwise_distance(pts) == brute);
  }
}
