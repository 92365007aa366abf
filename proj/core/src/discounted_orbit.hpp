#pragma once

#include "thinopt/growth.hpp"

namespace thinopt::detail {

// Enumerates the terms q^i g^(i)(m) for i = 0, 1, ... together with the
// partial geometric sums sum_{j<i} q^j used by the hard-core penalty. Every
// analytic quantity goes through this one walker so that bounds computed by
// different routes compare exactly.
class DiscountedOrbit {
 public:
  DiscountedOrbit(const GrowthFunction& g, double m, double q) : orbit_(g, m), q_(q) {}

  int index() const { return orbit_.index(); }
  double discount() const { return discount_; }
  double geometric() const { return geometric_; }
  double term() const { return discount_ * orbit_.value(); }
  double penalized(double penalty_rate) const { return term() - penalty_rate * geometric_; }

  void advance() {
    geometric_ += discount_;
    discount_ *= q_;
    orbit_.advance();
  }

 private:
  GrowthOrbit orbit_;
  double q_;
  double discount_ = 1.0;
  double geometric_ = 0.0;
};

// Hard cap on certified enumerations; reaching it means the stopping rule
// failed, which valid parameters cannot trigger.
inline constexpr int kEnumerationCap = 10'000;

}  // namespace thinopt::detail
