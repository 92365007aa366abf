#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "thinopt/geometry.hpp"
#include "thinopt/growth.hpp"

namespace thinopt {

/// Law of newborn marks on [0, K].
class MarkLaw {
 public:
  struct ScaledBeta {
    double a = 1.0;
    double b = 1.0;
  };
  struct Uniform {};
  struct PointMass {
    double m0 = 0.0;
  };
  using Kind = std::variant<ScaledBeta, Uniform, PointMass>;

  MarkLaw() : kind_(Uniform{}) {}
  static MarkLaw scaled_beta(double a, double b);
  static MarkLaw uniform() { return MarkLaw(Uniform{}); }
  static MarkLaw point_mass(double m0);

  const Kind& kind() const { return kind_; }
  double mean(double cap) const;
  void validate(double cap) const;

  // `beta:<a>:<b>`, `uniform`, `point:<m0>`.
  std::string to_string() const;
  static MarkLaw parse(std::string_view spec);

 private:
  explicit MarkLaw(Kind kind) : kind_(kind) {}
  Kind kind_;
};

struct ModelParams {
  double K = 0.1;         // mark cap, also the hard-core distance
  double lambda = 2.0;    // logistic growth rate
  double p_d = 0.05;      // death probability per epoch
  double beta = 1.0;      // birth intensity per unit area per epoch
  double alpha = 0.9;     // discount factor, [0, 1)
  double R = 1.0;         // reward per unit mark
  Window window{0.0, 0.0, 5.0, 5.0};
  MarkLaw mark_law = MarkLaw::scaled_beta(2.0, 20.0);

  // Throws PreconditionError naming the offending field.
  void validate() const;

  // alpha * (1 - p_d): discount for one epoch of survival.
  double survival_discount() const { return alpha * (1.0 - p_d); }
  GrowthFunction logistic_growth() const { return GrowthFunction::logistic(lambda, K); }
};

/// How integrals against the mark law (and, for the hard-core lower bound,
/// over the window) are evaluated.
struct Quadrature {
  double rel_tol = 1e-9;
};
struct MonteCarlo {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};
using IntegrationSpec = std::variant<Quadrature, MonteCarlo>;

void validate_integration(const IntegrationSpec& spec);

struct ClosedForm {};
using ValueMethod = std::variant<ClosedForm, MonteCarlo>;

/// An analytic value split into the contribution of the current points and
/// of all future generations. total == initial_generation_term +
/// birth_stream_term holds exactly.
struct ValueReport {
  double total = 0.0;
  double initial_generation_term = 0.0;
  double birth_stream_term = 0.0;
  ValueMethod method = ClosedForm{};
  double integral_std_error = 0.0;
};

ValueReport make_value_report(double initial, double births, ValueMethod method,
                              double std_error);

}  // namespace thinopt
