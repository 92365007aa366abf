#pragma once

#include <iosfwd>
#include <vector>

#include "thinopt/growth.hpp"
#include "thinopt/model.hpp"
#include "thinopt/pattern.hpp"

namespace thinopt {

// Computable bounds for the hard-core birth-death-growth model, where newborn
// points never land within distance K of a retained point. The growth map g
// is any GrowthFunction with cap K; q = alpha (1 - p_d).

/// Upper kernel: 0 for n = 0, else max_{0 <= i < n} q^i g^(i)(m).
double s_hat_n(double m, int n, const ModelParams& p, const GrowthFunction& g);

/// Lower kernel: 0 for n = 0, else
///   max_{0 <= i < n} [ q^i g^(i)(m) - alpha K beta |b(loc, K) n W| sum_{j<i} q^j ].
double s_tilde_n(Point2 loc, double m, int n, const ModelParams& p, const GrowthFunction& g);

/// Monotone limits of the kernels as n grows.
double s_hat_inf(double m, const ModelParams& p, const GrowthFunction& g);
double s_tilde_inf(Point2 loc, double m, const ModelParams& p, const GrowthFunction& g);

/// Upper bound on the optimal n-horizon value:
///   R sum_x s_hat_n(m) + R beta |W| sum_{k=1}^{n-1} alpha^k int s_hat_{n-k} dnu.
double v_hat_n(const Pattern& x, int n, const ModelParams& p, const GrowthFunction& g,
               const IntegrationSpec& integ = MonteCarlo{});

/// Lower bound on the optimal n-horizon value:
///   R sum_x s_tilde_n(loc, m) + R beta sum_{k=1}^{n-1} alpha^k int_W int s_tilde_{n-k} dnu dw.
/// Both bounds draw from one shared sample set (Monte Carlo) or one shared
/// node set (quadrature), so v_tilde_n <= v_hat_n holds exactly.
double v_tilde_n(const Pattern& x, int n, const ModelParams& p, const GrowthFunction& g,
                 const IntegrationSpec& integ = MonteCarlo{});

struct BoundsCurve {
  std::vector<int> n_values;
  std::vector<double> lower;  // v_tilde_n
  std::vector<double> upper;  // v_hat_n
  IntegrationSpec integration;
};

/// Both bounds for n = 1..n_max from one shared sample set.
BoundsCurve bounds_curve(const Pattern& x, int n_max, const ModelParams& p,
                         const GrowthFunction& g, const IntegrationSpec& integ = MonteCarlo{});

// Index of the first row with lower > upper, or -1.
int first_sandwich_breach(const BoundsCurve& curve);

// CSV `n,v_tilde,v_hat`.
void write_bounds_csv(std::ostream& out, const BoundsCurve& curve);

}  // namespace thinopt
