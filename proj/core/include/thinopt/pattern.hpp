#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "thinopt/geometry.hpp"

namespace thinopt {

struct MarkedPoint {
  Point2 location;
  double mark = 0.0;

  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

/// A finite simple marked point configuration, the state of the decision
/// process. Point order is a storage detail; all semantics are set-like.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<MarkedPoint> points) : points_(std::move(points)) {}

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const MarkedPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  const std::vector<MarkedPoint>& points() const { return points_; }

  void push_back(MarkedPoint p) { points_.push_back(p); }
  void reserve(std::size_t n) { points_.reserve(n); }

  std::vector<Point2> locations() const;

  // No two points share a location.
  bool is_simple() const;

 private:
  std::vector<MarkedPoint> points_;
};

// Exact (bitwise) comparison of the point sets, ignoring storage order.
bool same_points(const Pattern& a, const Pattern& b);

// Throws PreconditionError unless every mark is in [0, cap], every location
// lies in the window and the pattern is simple.
void validate_pattern(const Pattern& x, const Window& w, double cap);

/// A thinning: the indices (into the parent pattern) of the retained points.
struct Action {
  std::vector<std::size_t> retained;
};

// Throws PreconditionError for out-of-range or duplicate indices.
void validate_action(const Pattern& x, const Action& a);

// The retained sub-pattern, in index order of the action.
Pattern apply_action(const Pattern& x, const Action& a);

double mark_sum(const Pattern& x);

// R times the mark sum of the removed points x \ a.
double reward(const Pattern& x, const Action& a, double reward_scale);

// True iff every pair is strictly farther apart than hc_distance.
bool is_hardcore(const Pattern& x, double hc_distance);

// Some pair (i, j) with distance <= hc_distance, if one exists.
std::optional<std::pair<std::size_t, std::size_t>> find_hardcore_violation(const Pattern& x,
                                                                           double hc_distance);

// CSV with header `x,y,mark`. Lines starting with '#' and blank lines are
// skipped on input. Values are written in shortest round-trip form.
void write_pattern_csv(std::ostream& out, const Pattern& x);
Pattern read_pattern_csv(std::istream& in);

}  // namespace thinopt
