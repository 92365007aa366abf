#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "thinopt/model.hpp"

namespace thinopt::detail {

// Adaptive Gauss-Kronrod (tanh-sinh for singular Beta densities) evaluation
// of the integral of f against the mark law on [0, cap].
double integrate_marks(const MarkLaw& law, double cap, const std::function<double(double)>& f,
                       double rel_tol);

// Fixed nonnegative-weight rule for the mark law: a point mass collapses to a
// single node, otherwise composite Gauss-Legendre (64 panels x 10 nodes)
// weighted by the density. Weights sum to ~1.
struct MarkRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
MarkRule mark_rule(const MarkLaw& law, double cap);

// Independent draws from the law, reproducible from the seed.
std::vector<double> draw_marks(const MarkLaw& law, double cap, std::size_t n, std::uint64_t seed);

// Uniform window locations paired with marks, drawn location-then-mark per
// sample from one stream so the two bounds can share them.
struct LocatedMark {
  Point2 location;
  double mark;
};
std::vector<LocatedMark> draw_located_marks(const ModelParams& p, std::size_t n,
                                            std::uint64_t seed);

// Mean and standard error (0 when fewer than two values).
struct MeanSe {
  double mean = 0.0;
  double std_error = 0.0;
};
MeanSe mean_and_se(const std::vector<double>& values);

}  // namespace thinopt::detail
