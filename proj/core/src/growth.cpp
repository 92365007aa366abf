#include "thinopt/growth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thinopt/errors.hpp"
#include "thinopt/numeric_format.hpp"

namespace thinopt {

double logistic_n(double m0, int n, double rate, double cap) {
  if (!(m0 >= 0.0 && m0 <= cap)) {
    throw DomainError("logistic_n: mark " + format_double(m0) + " outside [0, " +
                      format_double(cap) + "]");
  }
  if (n < 0) throw DomainError("logistic_n: negative number of epochs");
  if (m0 == 0.0 || n == 0) return m0;
  const double value = cap / (1.0 + (cap / m0 - 1.0) * std::exp(-rate * n));
  return std::min(value, cap);
}

GrowthFunction GrowthFunction::logistic(double rate, double cap) {
  if (!(rate > 0.0) || !(cap > 0.0) || !std::isfinite(rate) || !std::isfinite(cap)) {
    throw PreconditionError("logistic growth requires rate > 0 and cap > 0");
  }
  GrowthFunction g;
  g.cap_ = cap;
  g.rate_ = rate;
  g.name_ = "logistic";
  return g;
}

GrowthFunction GrowthFunction::custom(std::function<double(double)> map, double cap,
                                      std::string name) {
  if (!map) throw PreconditionError("custom growth: empty function");
  if (!(cap > 0.0) || !std::isfinite(cap)) throw PreconditionError("custom growth: cap must be > 0");
  constexpr int grid = 10'000;
  for (int i = 0; i <= grid; ++i) {
    const double m = i == grid ? cap : cap * static_cast<double>(i) / grid;
    const double gm = map(m);
    if (!std::isfinite(gm) || gm < m || gm > cap) {
      throw PreconditionError("custom growth violates m <= g(m) <= K at m = " + format_double(m));
    }
  }
  GrowthFunction g;
  g.cap_ = cap;
  g.map_ = std::move(map);
  g.name_ = std::move(name);
  return g;
}

void GrowthFunction::check_mark(double m) const {
  if (!(m >= 0.0 && m <= cap_)) {
    throw DomainError("growth: mark " + format_double(m) + " outside [0, " + format_double(cap_) +
                      "]");
  }
}

double GrowthFunction::step(double m) const {
  check_mark(m);
  if (!map_) return logistic_n(m, 1, rate_, cap_);
  return map_(m);
}

double GrowthFunction::iterate(double m, int n) const {
  check_mark(m);
  if (n < 0) throw DomainError("growth: negative number of epochs");
  if (!map_) return logistic_n(m, n, rate_, cap_);
  for (int i = 0; i < n; ++i) m = map_(m);
  return m;
}

GrowthOrbit::GrowthOrbit(const GrowthFunction& g, double m) : g_(&g), start_(m), value_(m) {
  if (!(m >= 0.0 && m <= g.cap())) {
    throw DomainError("growth: mark " + format_double(m) + " outside [0, " + format_double(g.cap()) +
                      "]");
  }
}

void GrowthOrbit::advance() {
  ++index_;
  value_ = g_->is_logistic() ? logistic_n(start_, index_, g_->rate(), g_->cap()) : g_->step(value_);
}

}  // namespace thinopt
