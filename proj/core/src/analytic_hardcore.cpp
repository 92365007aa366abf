#include "thinopt/analytic_hardcore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "discounted_orbit.hpp"
#include "mark_integral.hpp"
#include "thinopt/errors.hpp"
#include "thinopt/numeric_format.hpp"

namespace thinopt {
namespace {

using detail::DiscountedOrbit;

void check_growth(const ModelParams& p, const GrowthFunction& g) {
  if (g.cap() != p.K) throw PreconditionError("growth function cap must equal K");
}

void check_mark(double m, double cap) {
  if (!(m >= 0.0 && m <= cap)) throw DomainError("mark outside [0, K]");
}

double penalty_rate(double area, const ModelParams& p) { return p.alpha * p.K * p.beta * area; }

double tilde_kernel(double area, double m, int n, const ModelParams& p, const GrowthFunction& g) {
  if (n == 0) return 0.0;
  const double rate = penalty_rate(area, p);
  DiscountedOrbit orbit(g, m, p.survival_discount());
  double best = orbit.penalized(rate);
  for (orbit.advance(); orbit.index() < n; orbit.advance()) {
    best = std::max(best, orbit.penalized(rate));
  }
  return best;
}

// Writes hat[j] and tilde[j] for j = 1..count (index 0 unused) as running maxima.
void running_kernels(double m, double rate, int count, const ModelParams& p,
                     const GrowthFunction& g, std::vector<double>& hat,
                     std::vector<double>& tilde) {
  hat.assign(static_cast<std::size_t>(count) + 1, 0.0);
  tilde.assign(static_cast<std::size_t>(count) + 1, 0.0);
  DiscountedOrbit orbit(g, m, p.survival_discount());
  for (int i = 0; i < count; ++i, orbit.advance()) {
    const auto j = static_cast<std::size_t>(i) + 1;
    hat[j] = i == 0 ? orbit.term() : std::max(hat[j - 1], orbit.term());
    tilde[j] = i == 0 ? orbit.penalized(rate) : std::max(tilde[j - 1], orbit.penalized(rate));
  }
}

// |W| times the averaged kernel integrals for horizons 1..count.
struct BoundIntegrals {
  std::vector<double> hat;
  std::vector<double> tilde;
};

BoundIntegrals integrate_monte_carlo(int count, const ModelParams& p, const GrowthFunction& g,
                                     const MonteCarlo& mc) {
  BoundIntegrals out{std::vector<double>(static_cast<std::size_t>(count) + 1, 0.0),
                     std::vector<double>(static_cast<std::size_t>(count) + 1, 0.0)};
  const auto samples = detail::draw_located_marks(p, mc.samples, mc.seed);
  std::vector<double> hat, tilde;
  for (const auto& s : samples) {
    const double area = ball_window_area(s.location, p.K, p.window);
    running_kernels(s.mark, penalty_rate(area, p), count, p, g, hat, tilde);
    for (int j = 1; j <= count; ++j) {
      out.hat[static_cast<std::size_t>(j)] += hat[static_cast<std::size_t>(j)];
      out.tilde[static_cast<std::size_t>(j)] += tilde[static_cast<std::size_t>(j)];
    }
  }
  const double scale = p.window.area() / static_cast<double>(samples.size());
  for (int j = 1; j <= count; ++j) {
    out.hat[static_cast<std::size_t>(j)] *= scale;
    out.tilde[static_cast<std::size_t>(j)] *= scale;
  }
  return out;
}

BoundIntegrals integrate_grid(int count, const ModelParams& p, const GrowthFunction& g) {
  constexpr int kCells = 64;
  const auto rule = detail::mark_rule(p.mark_law, p.K);
  const auto size = static_cast<std::size_t>(count) + 1;

  // Per-cell mark integrals, cached by disc area: interior cells share pi K^2.
  std::map<double, std::pair<std::vector<double>, std::vector<double>>> by_area;
  std::vector<double> hat, tilde;
  const auto cell_integrals = [&](double area) -> const auto& {
    auto it = by_area.find(area);
    if (it != by_area.end()) return it->second;
    std::vector<double> hat_sum(size, 0.0), tilde_sum(size, 0.0);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      running_kernels(rule.nodes[k], penalty_rate(area, p), count, p, g, hat, tilde);
      for (std::size_t j = 1; j < size; ++j) {
        hat_sum[j] += rule.weights[k] * hat[j];
        tilde_sum[j] += rule.weights[k] * tilde[j];
      }
    }
    return by_area.emplace(area, std::pair(std::move(hat_sum), std::move(tilde_sum)))
        .first->second;
  };

  BoundIntegrals out{std::vector<double>(size, 0.0), std::vector<double>(size, 0.0)};
  const double dx = p.window.width() / kCells;
  const double dy = p.window.height() / kCells;
  for (int ix = 0; ix < kCells; ++ix) {
    for (int iy = 0; iy < kCells; ++iy) {
      const Point2 centre{p.window.x_min() + (ix + 0.5) * dx, p.window.y_min() + (iy + 0.5) * dy};
      const auto& [hat_sum, tilde_sum] = cell_integrals(ball_window_area(centre, p.K, p.window));
      for (std::size_t j = 1; j < size; ++j) {
        out.hat[j] += hat_sum[j];
        out.tilde[j] += tilde_sum[j];
      }
    }
  }
  const double scale = p.window.area() / (kCells * kCells);
  for (std::size_t j = 1; j < size; ++j) {
    out.hat[j] *= scale;
    out.tilde[j] *= scale;
  }
  return out;
}

BoundIntegrals bound_integrals(int count, const ModelParams& p, const GrowthFunction& g,
                               const IntegrationSpec& integ) {
  validate_integration(integ);
  if (count <= 0) return {{0.0}, {0.0}};
  if (const auto* mc = std::get_if<MonteCarlo>(&integ)) {
    return integrate_monte_carlo(count, p, g, *mc);
  }
  return integrate_grid(count, p, g);
}

double birth_term(int n, const std::vector<double>& integrals, const ModelParams& p) {
  double total = 0.0;
  for (int k = 1; k < n; ++k) {
    total += std::pow(p.alpha, k) * integrals[static_cast<std::size_t>(n - k)];
  }
  return p.R * p.beta * total;
}

double hat_points(const Pattern& x, int n, const ModelParams& p, const GrowthFunction& g) {
  double total = 0.0;
  for (const auto& pt : x) total += s_hat_n(pt.mark, n, p, g);
  return p.R * total;
}

double tilde_points(const Pattern& x, int n, const ModelParams& p, const GrowthFunction& g) {
  double total = 0.0;
  for (const auto& pt : x) total += s_tilde_n(pt.location, pt.mark, n, p, g);
  return p.R * total;
}

}  // namespace

double s_hat_n(double m, int n, const ModelParams& p, const GrowthFunction& g) {
  check_growth(p, g);
  check_mark(m, p.K);
  if (n < 0) throw PreconditionError("s_hat_n: n must be >= 0");
  if (n == 0) return 0.0;
  DiscountedOrbit orbit(g, m, p.survival_discount());
  double best = orbit.term();
  for (orbit.advance(); orbit.index() < n; orbit.advance()) best = std::max(best, orbit.term());
  return best;
}

double s_tilde_n(Point2 loc, double m, int n, const ModelParams& p, const GrowthFunction& g) {
  check_growth(p, g);
  check_mark(m, p.K);
  if (n < 0) throw PreconditionError("s_tilde_n: n must be >= 0");
  return tilde_kernel(ball_window_area(loc, p.K, p.window), m, n, p, g);
}

double s_hat_inf(double m, const ModelParams& p, const GrowthFunction& g) {
  ModelParams unpenalized = p;
  unpenalized.beta = 0.0;
  return s_tilde_inf(Point2{}, m, unpenalized, g);
}

double s_tilde_inf(Point2 loc, double m, const ModelParams& p, const GrowthFunction& g) {
  check_growth(p, g);
  check_mark(m, p.K);
  if (g.step(m) == m) return m;  // constant orbit: every later term is <= m
  const double rate = p.beta > 0.0 ? penalty_rate(ball_window_area(loc, p.K, p.window), p) : 0.0;
  DiscountedOrbit orbit(g, m, p.survival_discount());
  double best = orbit.penalized(rate);
  for (orbit.advance(); orbit.index() <= detail::kEnumerationCap; orbit.advance()) {
    // Penalized terms never exceed the undiscounted envelope K q^n.
    const double envelope = p.K * orbit.discount();
    if (envelope < best || envelope == 0.0) return best;
    best = std::max(best, orbit.penalized(rate));
  }
  throw InvariantError("s_tilde_inf: enumeration cap reached");
}

double v_hat_n(const Pattern& x, int n, const ModelParams& p, const GrowthFunction& g,
               const IntegrationSpec& integ) {
  if (n < 1) throw PreconditionError("v_hat_n: n must be >= 1");
  check_growth(p, g);
  const auto integrals = bound_integrals(n - 1, p, g, integ);
  return hat_points(x, n, p, g) + birth_term(n, integrals.hat, p);
}

double v_tilde_n(const Pattern& x, int n, const ModelParams& p, const GrowthFunction& g,
                 const IntegrationSpec& integ) {
  if (n < 1) throw PreconditionError("v_tilde_n: n must be >= 1");
  check_growth(p, g);
  const auto integrals = bound_integrals(n - 1, p, g, integ);
  return tilde_points(x, n, p, g) + birth_term(n, integrals.tilde, p);
}

BoundsCurve bounds_curve(const Pattern& x, int n_max, const ModelParams& p,
                         const GrowthFunction& g, const IntegrationSpec& integ) {
  if (n_max < 1) throw PreconditionError("bounds_curve: n_max must be >= 1");
  check_growth(p, g);
  const auto integrals = bound_integrals(n_max - 1, p, g, integ);
  BoundsCurve curve;
  curve.integration = integ;
  for (int n = 1; n <= n_max; ++n) {
    curve.n_values.push_back(n);
    curve.lower.push_back(tilde_points(x, n, p, g) + birth_term(n, integrals.tilde, p));
    curve.upper.push_back(hat_points(x, n, p, g) + birth_term(n, integrals.hat, p));
  }
  return curve;
}

int first_sandwich_breach(const BoundsCurve& curve) {
  for (std::size_t i = 0; i < curve.lower.size(); ++i) {
    if (curve.lower[i] > curve.upper[i]) return static_cast<int>(i);
  }
  return -1;
}

void write_bounds_csv(std::ostream& out, const BoundsCurve& curve) {
  out << "n,v_tilde,v_hat\n";
  for (std::size_t i = 0; i < curve.n_values.size(); ++i) {
    out << curve.n_values[i] << ',' << format_double(curve.lower[i]) << ','
        << format_double(curve.upper[i]) << '\n';
  }
}

}  // namespace thinopt
