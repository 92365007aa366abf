#include <doctest.h>

#include <random>
#include <sstream>

#include "thinopt/errors.hpp"
#include "thinopt/pattern.hpp"

using namespace thinopt;

namespace {
Pattern two_points() { return Pattern({{{1, 1}, 0.05}, {{2, 2}, 0.03}}); }
}  // namespace

TEST_CASE("reward sums the removed marks") {
  const Pattern x = two_points();
  CHECK(reward(x, Action{}, 1.0) == doctest::Approx(0.08));
  CHECK(reward(Pattern({{{1, 1}, 0.05}}), Action{{0}}, 1.0) == 0.0);
  CHECK(reward(x, Action{{1}}, 2.0) == doctest::Approx(0.10));
}

TEST_CASE("invalid actions are rejected") {
  const Pattern x = two_points();
  CHECK_THROWS_AS(reward(x, Action{{2}}, 1.0), PreconditionError);
  CHECK_THROWS_AS(reward(x, Action{{0, 0}}, 1.0), PreconditionError);
  CHECK_THROWS_AS(apply_action(x, Action{{5}}), PreconditionError);
  CHECK_NOTHROW(validate_action(x, Action{{1, 0}}));
}

TEST_CASE("mark sum") {
  CHECK(mark_sum(Pattern{}) == 0.0);
  CHECK(mark_sum(two_points()) == doctest::Approx(0.08));
  CHECK(mark_sum(Pattern({{{0, 0}, 0.1}})) == 0.1);
}

TEST_CASE("apply_action keeps the retained points in action order") {
  const Pattern x = two_points();
  const Pattern kept = apply_action(x, Action{{1}});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0] == x[1]);
}

TEST_CASE("reward partition identity and monotonicity") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Pattern x;
    const int n = 1 + trial % 12;
    for (int i = 0; i < n; ++i) x.push_back({{5 * u(gen), 5 * u(gen)}, 0.1 * u(gen)});
    Action a, smaller;
    for (int i = 0; i < n; ++i) {
      if (u(gen) < 0.5) {
        a.retained.push_back(i);
        if (u(gen) < 0.5) smaller.retained.push_back(i);
      }
    }
    const double R = 0.5 + u(gen);
    CHECK(reward(x, a, R) + R * mark_sum(apply_action(x, a)) == doctest::Approx(R * mark_sum(x)));
    // `smaller` retains a subset, so it removes a superset.
    CHECK(reward(x, smaller, R) >= reward(x, a, R) - 1e-15);
  }
}

TEST_CASE("is_hardcore uses a closed exclusion distance") {
  const double K = 0.1;
  CHECK(is_hardcore(Pattern{}, K));
  CHECK_FALSE(is_hardcore(Pattern({{{0, 0}, 0}, {{0.1, 0}, 0}}), K));
  CHECK(is_hardcore(Pattern({{{0, 0}, 0}, {{0.15, 0}, 0}}), K));
  CHECK_THROWS_AS(is_hardcore(Pattern{}, 0.0), PreconditionError);
  const auto bad = find_hardcore_violation(Pattern({{{0, 0}, 0}, {{3, 3}, 0}, {{0.05, 0}, 0}}), K);
  REQUIRE(bad.has_value());
  CHECK(bad->first == 0);
  CHECK(bad->second == 2);
}

TEST_CASE("validate_pattern checks marks, window and simplicity") {
  const Window w{0, 0, 5, 5};
  CHECK_NOTHROW(validate_pattern(two_points(), w, 0.1));
  CHECK_THROWS_AS(validate_pattern(Pattern({{{1, 1}, 0.2}}), w, 0.1), PreconditionError);
  CHECK_THROWS_AS(validate_pattern(Pattern({{{1, 1}, -0.01}}), w, 0.1), PreconditionError);
  CHECK_THROWS_AS(validate_pattern(Pattern({{{6, 1}, 0.01}}), w, 0.1), PreconditionError);
  CHECK_THROWS_AS(validate_pattern(Pattern({{{1, 1}, 0.01}, {{1, 1}, 0.02}}), w, 0.1), PreconditionError);
}

TEST_CASE("pattern CSV round trip is exact") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Pattern x;
  for (int i = 0; i < 50; ++i) x.push_back({{5 * u(gen), 5 * u(gen)}, 0.1 * u(gen)});
  std::stringstream buf;
  write_pattern_csv(buf, x);
  CHECK(buf.str().rfind("x,y,mark\n", 0) == 0);
  const Pattern back = read_pattern_csv(buf);
  CHECK(same_points(x, back));
  REQUIRE(back.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == x[i]);
}

TEST_CASE("pattern CSV skips comments and reports bad rows") {
  std::istringstream ok("# seed=1\nx,y,mark\n\n1,2,0.05\n# trailing\n");
  CHECK(read_pattern_csv(ok).size() == 1);
  std::istringstream bad("x,y,mark\n1,2,0.05\n1,oops,0.01\n");
  try {
    read_pattern_csv(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  std::istringstream short_row("x,y,mark\n1,2\n");
  CHECK_THROWS_AS(read_pattern_csv(short_row), ParseError);
  std::istringstream wrong_header("a,b,c\n1,2,3\n");
  CHECK_THROWS_AS(read_pattern_csv(wrong_header), ParseError);
}

TEST_CASE("same_points ignores order but not values") {
  const Pattern a = two_points();
  const Pattern b({a[1], a[0]});
  CHECK(same_points(a, b));
  CHECK_FALSE(same_points(a, Pattern({a[0], {{2, 2}, 0.030000000000000002}})));
}
