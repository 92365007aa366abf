#pragma once

#include <functional>
#include <string>

namespace thinopt {

/// Verhulst logistic mark after n epochs from m0:
///   cap / (1 + (cap/m0 - 1) * exp(-rate * n)),
/// with the convention that a zero mark stays zero. Throws DomainError for
/// m0 outside [0, cap] or negative n.
double logistic_n(double m0, int n, double rate, double cap);

/// Single-epoch mark growth g: [0, K] -> [0, K] with m <= g(m) <= K.
/// Either the logistic flow sampled at unit time, or a user map checked at
/// construction on a 10,001-point grid of [0, K].
class GrowthFunction {
 public:
  static GrowthFunction logistic(double rate, double cap);
  static GrowthFunction custom(std::function<double(double)> g, double cap,
                               std::string name = "custom");

  bool is_logistic() const { return !map_; }
  double cap() const { return cap_; }
  double rate() const { return rate_; }  // logistic only
  const std::string& name() const { return name_; }

  double step(double m) const;
  // n-fold composition; the logistic case uses the closed form.
  double iterate(double m, int n) const;

 private:
  GrowthFunction() = default;
  void check_mark(double m) const;

  double cap_ = 0.0;
  double rate_ = 0.0;
  std::function<double(double)> map_;
  std::string name_;
};

/// Walks m, g(m), g^(2)(m), ... For logistic growth every value comes from
/// the closed form, otherwise from repeated composition.
class GrowthOrbit {
 public:
  GrowthOrbit(const GrowthFunction& g, double m);

  int index() const { return index_; }
  double value() const { return value_; }
  void advance();

 private:
  const GrowthFunction* g_;
  double start_;
  double value_;
  int index_ = 0;
};

}  // namespace thinopt
