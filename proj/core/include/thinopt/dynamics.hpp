#pragma once

#include <cstdint>

#include "thinopt/growth.hpp"
#include "thinopt/model.hpp"
#include "thinopt/pattern.hpp"
#include "thinopt/rng.hpp"

namespace thinopt {

enum class KernelKind { PoissonBDG, HardcoreBDG };

/// One-epoch birth-death-growth transition applied to the retained pattern.
/// The Poisson kernel always grows marks logistically with (lambda, K); the
/// hard-core kernel accepts any growth map with cap K and uses K as the
/// hard-core distance.
class Kernel {
 public:
  static Kernel poisson(const ModelParams& p);
  static Kernel hardcore(const ModelParams& p, GrowthFunction g);
  static Kernel hardcore(const ModelParams& p) { return hardcore(p, p.logistic_growth()); }

  KernelKind kind() const { return kind_; }
  const ModelParams& params() const { return params_; }
  const GrowthFunction& growth() const { return growth_; }
  double hardcore_distance() const { return params_.K; }

 private:
  Kernel(KernelKind kind, ModelParams p, GrowthFunction g)
      : kind_(kind), params_(std::move(p)), growth_(std::move(g)) {}

  KernelKind kind_;
  ModelParams params_;
  GrowthFunction growth_;
};

double sample_mark(const MarkLaw& law, double cap, RngStream& rng);

// Independent deaths with probability p_d, survivors grow by one epoch, and a
// Poisson(beta |W|) number of uniform newborns with marks from the mark law.
Pattern step_poisson(const Pattern& retained, const Kernel& k, RngStream& rng);

// As step_poisson, but newborn proposals within distance <= K of any retained
// point are discarded, and the rest are accepted in proposal order only when
// farther than K from every previously accepted newborn. Throws
// PreconditionError if `retained` violates the hard core.
Pattern step_hardcore(const Pattern& retained, const Kernel& k, RngStream& rng);

Pattern step(const Pattern& retained, const Kernel& k, RngStream& rng);

struct GibbsSample {
  Pattern pattern;
  double empirical_intensity = 0.0;
};

/// Approximate draw from the hard-core Gibbs process (Strauss with zero
/// interaction) by birth-death Metropolis-Hastings started from the empty
/// pattern. One sweep is max(1, ceil(2 activity |W|)) proposals. Marks are
/// drawn i.i.d. from `law` after the chain has run.
GibbsSample sample_hardcore_gibbs(const Window& w, double activity, double hc, int sweeps,
                                  const MarkLaw& law, double cap, RngStream& rng);

struct ActivityCalibration {
  double activity = 0.0;
  double estimated_intensity = 0.0;
  int iterations = 0;
};

/// Bisection on the activity until the long-run intensity of the Gibbs chain
/// (estimated from pilot runs on a fixed stream) is within rel_tol of target.
ActivityCalibration calibrate_hardcore_activity(const Window& w, double target_intensity,
                                                double hc, std::uint64_t seed,
                                                double rel_tol = 0.02);

}  // namespace thinopt
