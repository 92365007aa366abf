#pragma once

#include <span>

namespace thinopt {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b);

// Axis-aligned rectangular observation window.
class Window {
 public:
  Window() = default;  // unit square
  Window(double x_min, double y_min, double x_max, double y_max);

  double x_min() const { return x_min_; }
  double y_min() const { return y_min_; }
  double x_max() const { return x_max_; }
  double y_max() const { return y_max_; }
  double width() const { return x_max_ - x_min_; }
  double height() const { return y_max_ - y_min_; }
  double area() const { return width() * height(); }

  // Boundary inclusive.
  bool contains(Point2 p) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  double x_min_ = 0.0;
  double y_min_ = 0.0;
  double x_max_ = 1.0;
  double y_max_ = 1.0;
};

double window_area(const Window& w);

/// Area of the intersection of the closed disc b(center, radius) with the
/// window. Exact up to rounding: the disc is integrated in closed form
/// against the lower-left quadrants at the four corners and the results are
/// combined by inclusion-exclusion. The center may lie outside the window.
double ball_window_area(Point2 center, double radius, const Window& w);

// Smallest distance over unordered pairs; +infinity for fewer than two points.
double min_pairwise_distance(std::span<const Point2> points);

}  // namespace thinopt
