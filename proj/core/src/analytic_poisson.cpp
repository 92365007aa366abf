#include "thinopt/analytic_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "discounted_orbit.hpp"
#include "mark_integral.hpp"
#include "thinopt/errors.hpp"

namespace thinopt {
namespace {

using detail::DiscountedOrbit;

void check_mark(double m, double cap) {
  if (!(m >= 0.0 && m <= cap)) throw DomainError("mark outside [0, K]");
}

// t_n = K (q^n - e^{-n lambda}) / (1 - e^{-n lambda}), n >= 1.
double threshold_term(int n, const ModelParams& p) {
  const double decay = std::exp(-p.lambda * n);
  return p.K * (std::pow(p.survival_discount(), n) - decay) / -std::expm1(-p.lambda * n);
}

// All running maxima s_1..s_count of the discounted logistic orbit.
std::vector<double> running_s(double m, int count, const ModelParams& p,
                              const GrowthFunction& g) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  DiscountedOrbit orbit(g, m, p.survival_discount());
  double best = 0.0;
  for (int i = 0; i < count; ++i, orbit.advance()) {
    best = i == 0 ? orbit.term() : std::max(best, orbit.term());
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

// Birth-stream integral sum_{k=1}^{n-1} alpha^k int s_{n-k} dnu, as a single
// integral of the combined integrand.
struct BirthIntegral {
  double value = 0.0;
  double std_error = 0.0;
};

template <class Integrand>
BirthIntegral integrate_birth_stream(const ModelParams& p, const IntegrationSpec& integ,
                                     const Integrand& f) {
  if (const auto* q = std::get_if<Quadrature>(&integ)) {
    return {detail::integrate_marks(p.mark_law, p.K, f, q->rel_tol), 0.0};
  }
  const auto& mc = std::get<MonteCarlo>(integ);
  const auto marks = detail::draw_marks(p.mark_law, p.K, mc.samples, mc.seed);
  std::vector<double> values;
  values.reserve(marks.size());
  for (const double m : marks) values.push_back(f(m));
  const auto est = detail::mean_and_se(values);
  return {est.mean, est.std_error};
}

ValueMethod method_of(const IntegrationSpec& integ) {
  if (const auto* mc = std::get_if<MonteCarlo>(&integ)) return *mc;
  return ClosedForm{};
}

}  // namespace

Supremum s_k(double m, int k, const ModelParams& p) {
  check_mark(m, p.K);
  if (k < 1) throw PreconditionError("s_k: k must be >= 1");
  const auto g = p.logistic_growth();
  DiscountedOrbit orbit(g, m, p.survival_discount());
  Supremum best{orbit.term(), 0};
  for (orbit.advance(); orbit.index() < k; orbit.advance()) {
    if (orbit.term() > best.value) best = {orbit.term(), orbit.index()};
  }
  return best;
}

Supremum s_inf(double m, const ModelParams& p) {
  check_mark(m, p.K);
  const auto g = p.logistic_growth();
  if (g.step(m) == m) return {m, 0};
  DiscountedOrbit orbit(g, m, p.survival_discount());
  Supremum best{orbit.term(), 0};
  for (orbit.advance(); orbit.index() <= detail::kEnumerationCap; orbit.advance()) {
    const double envelope = p.K * orbit.discount();
    if (envelope < best.value || envelope == 0.0) return best;
    if (orbit.term() > best.value) best = {orbit.term(), orbit.index()};
  }
  throw InvariantError("s_inf: enumeration cap reached");
}

double d_n(int n, const ModelParams& p) {
  if (n < 1) throw PreconditionError("d_n: n must be >= 1");
  double best = 0.0;
  for (int k = 1; k < n; ++k) best = std::max(best, threshold_term(k, p));
  return best;
}

Supremum d_star(const ModelParams& p) {
  // t_n < 0 for every n exactly when q <= e^{-lambda}.
  if (p.survival_discount() <= std::exp(-p.lambda)) return {0.0, 0};
  Supremum best{threshold_term(1, p), 1};
  const double q = p.survival_discount();
  for (int n = 2; n <= detail::kEnumerationCap; ++n) {
    // t_n <= K q^n, so once the envelope is below the running max we are done.
    if (p.K * std::pow(q, n) < best.value) return best;
    const double t = threshold_term(n, p);
    if (t > best.value) best = {t, n};
  }
  throw InvariantError("d_star: enumeration cap reached");
}

ValueReport v_n_poisson(const Pattern& x, int n, const ModelParams& p,
                        const IntegrationSpec& integ) {
  if (n < 1) throw PreconditionError("v_n_poisson: n must be >= 1");
  validate_integration(integ);
  const auto g = p.logistic_growth();

  double initial = 0.0;
  for (const auto& pt : x) initial += s_k(pt.mark, n, p).value;
  initial *= p.R;

  if (n == 1) return make_value_report(initial, 0.0, method_of(integ), 0.0);

  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) weights[static_cast<std::size_t>(k)] = std::pow(p.alpha, k);
  const auto integrand = [&](double m) {
    const auto s = running_s(m, n - 1, p, g);
    double total = 0.0;
    for (int k = 1; k < n; ++k) {
      total += weights[static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(n - k - 1)];
    }
    return total;
  };
  const auto births = integrate_birth_stream(p, integ, integrand);
  const double scale = p.R * p.beta * p.window.area();
  return make_value_report(initial, scale * births.value, method_of(integ),
                           scale * births.std_error);
}

ValueReport v_star_poisson(const Pattern& x, const ModelParams& p, const IntegrationSpec& integ) {
  validate_integration(integ);
  double initial = 0.0;
  for (const auto& pt : x) initial += s_inf(pt.mark, p).value;
  initial *= p.R;

  const auto births =
      integrate_birth_stream(p, integ, [&](double m) { return s_inf(m, p).value; });
  const double scale = p.R * p.beta * p.window.area() * p.alpha / (1.0 - p.alpha);
  return make_value_report(initial, scale * births.value, method_of(integ),
                           scale * births.std_error);
}

double lemma1_bound(const Pattern& x, const ModelParams& p) {
  const double points = p.R * p.K * static_cast<double>(x.size()) / (1.0 - p.survival_discount());
  const double births = p.R * p.K * p.beta * p.window.area() / p.p_d * p.alpha / (1.0 - p.alpha);
  return points + births;
}

double tail_bound(const Pattern& x, int T, const ModelParams& p) {
  if (T < 0) throw PreconditionError("tail_bound: T must be >= 0");
  const double q = p.survival_discount();
  const double points =
      p.R * p.K * static_cast<double>(x.size()) * std::pow(q, T + 1) / (1.0 - q);
  const double births =
      p.R * p.K * p.beta * p.window.area() / p.p_d * std::pow(p.alpha, T + 1) / (1.0 - p.alpha);
  return points + births;
}

int certified_horizon(const Pattern& x, const ModelParams& p, double rel) {
  const double budget = rel * lemma1_bound(x, p);
  if (!(budget > 0.0)) return 1;
  for (int T = 1; T <= detail::kEnumerationCap; ++T) {
    if (tail_bound(x, T - 1, p) < budget) return T;
  }
  throw InvariantError("certified_horizon: enumeration cap reached");
}

}  // namespace thinopt
