#include "mark_integral.hpp"
#include "statistics.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <optional>

#include "thinopt/dynamics.hpp"
#include "thinopt/rng.hpp"

namespace thinopt::detail {

double integrate_marks(const MarkLaw& law, double cap, const std::function<double(double)>& f,
                       double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr unsigned kMaxDepth = 20;
  const auto& kind = law.kind();
  if (const auto* p = std::get_if<MarkLaw::PointMass>(&kind)) return f(p->m0);
  if (std::holds_alternative<MarkLaw::Uniform>(kind)) {
    return gauss_kronrod<double, 31>::integrate([&](double u) { return f(cap * u); }, 0.0, 1.0,
                                                kMaxDepth, rel_tol);
  }
  const auto& shape = std::get<MarkLaw::ScaledBeta>(kind);
  const boost::math::beta_distribution<double> density(shape.a, shape.b);
  const auto integrand = [&](double u) { return f(cap * u) * boost::math::pdf(density, u); };
  if (shape.a < 1.0 || shape.b < 1.0) {
    boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate(integrand, 0.0, 1.0, rel_tol);
  }
  return gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, kMaxDepth, rel_tol);
}

MarkRule mark_rule(const MarkLaw& law, double cap) {
  MarkRule rule;
  const auto& kind = law.kind();
  if (const auto* p = std::get_if<MarkLaw::PointMass>(&kind)) {
    rule.nodes = {p->m0};
    rule.weights = {1.0};
    return rule;
  }
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& abscissa = Gauss::abscissa();
  const auto& weight = Gauss::weights();
  constexpr int kPanels = 64;
  const auto* shape = std::get_if<MarkLaw::ScaledBeta>(&kind);
  std::optional<boost::math::beta_distribution<double>> density;
  if (shape) density.emplace(shape->a, shape->b);
  for (int panel = 0; panel < kPanels; ++panel) {
    const double lo = static_cast<double>(panel) / kPanels;
    const double half = 0.5 / kPanels;
    const double mid = lo + half;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      for (const double sign : {-1.0, 1.0}) {
        const double u = mid + sign * half * abscissa[i];
        double w = half * weight[i];
        if (density) w *= boost::math::pdf(*density, u);
        rule.nodes.push_back(cap * u);
        rule.weights.push_back(w);
      }
    }
  }
  return rule;
}

std::vector<double> draw_marks(const MarkLaw& law, double cap, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> out(n);
  for (auto& m : out) m = sample_mark(law, cap, rng);
  return out;
}

std::vector<LocatedMark> draw_located_marks(const ModelParams& p, std::size_t n,
                                            std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<LocatedMark> out(n);
  for (auto& s : out) {
    s.location.x = rng.uniform(p.window.x_min(), p.window.x_max());
    s.location.y = rng.uniform(p.window.y_min(), p.window.y_max());
    s.mark = sample_mark(p.mark_law, p.K, rng);
  }
  return out;
}

MeanSe mean_and_se(const std::vector<double>& values) {
  const auto stats = sample_stats(values);
  MeanSe out;
  out.mean = stats.mean;
  out.std_error = stats.std_error;
  return out;
}

}  // namespace thinopt::detail
