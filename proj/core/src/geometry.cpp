#include "thinopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "thinopt/errors.hpp"

namespace thinopt {
namespace {

// Antiderivative of sqrt(r^2 - x^2), with x clamped to [-r, r].
double half_chord_primitive(double x, double r) {
  x = std::clamp(x, -r, r);
  const double h = std::sqrt(std::max(0.0, r * r - x * x));
  return 0.5 * (x * h + r * r * std::asin(x / r));
}

// Area of {p : |p| <= r, p.x <= a, p.y <= b} for the disc centred at the origin.
double disc_quadrant_area(double a, double b, double r) {
  if (a <= -r || b <= -r) return 0.0;
  a = std::min(a, r);
  const auto chord = [r](double lo, double hi) {
    return lo < hi ? half_chord_primitive(hi, r) - half_chord_primitive(lo, r) : 0.0;
  };
  const auto span = [](double lo, double hi) { return std::max(0.0, hi - lo); };

  if (b >= r) return 2.0 * chord(-r, a);

  const double c = std::sqrt(r * r - b * b);
  if (b >= 0.0) {
    // Column at x spans [-h, min(b, h)]; min(b, h) = h exactly when |x| >= c.
    return chord(-r, a) + chord(-r, std::min(a, -c)) + chord(c, a) +
           b * span(-c, std::min(a, c));
  }
  // b < 0: only columns with h(x) > -b, i.e. |x| < c, contribute b + h.
  const double hi = std::min(a, c);
  return chord(-c, hi) + b * span(-c, hi);
}

}  // namespace

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Window::Window(double x_min, double y_min, double x_max, double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  const bool finite = std::isfinite(x_min) && std::isfinite(y_min) && std::isfinite(x_max) &&
                      std::isfinite(y_max);
  if (!finite || !(x_min < x_max) || !(y_min < y_max)) {
    throw PreconditionError("window requires finite x_min < x_max and y_min < y_max");
  }
}

bool Window::contains(Point2 p) const {
  return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
}

double window_area(const Window& w) { return w.area(); }

double ball_window_area(Point2 center, double radius, const Window& w) {
  if (!(radius > 0.0)) throw PreconditionError("ball_window_area: radius must be positive");

  const double x1 = w.x_min() - center.x;
  const double x2 = w.x_max() - center.x;
  const double y1 = w.y_min() - center.y;
  const double y2 = w.y_max() - center.y;
  const double disc = std::numbers::pi * radius * radius;

  if (x1 <= -radius && x2 >= radius && y1 <= -radius && y2 >= radius) return disc;

  const double area = disc_quadrant_area(x2, y2, radius) - disc_quadrant_area(x1, y2, radius) -
                      disc_quadrant_area(x2, y1, radius) + disc_quadrant_area(x1, y1, radius);
  return std::clamp(area, 0.0, std::min(disc, w.area()));
}

double min_pairwise_distance(std::span<const Point2> points) {
  double best = std::numeric_limits<double>::infinity();
  if (points.size() < 2) return best;

  std::vector<Point2> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Point2& a, const Point2& b) { return a.x < b.x; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (sorted[j].x - sorted[i].x > best) break;
      best = std::min(best, distance(sorted[i], sorted[j]));
    }
  }
  return best;
}

}  // namespace thinopt
