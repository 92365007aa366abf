#pragma once

#include "thinopt/model.hpp"
#include "thinopt/pattern.hpp"

namespace thinopt {

/// A maximum over an index set together with the smallest attaining index.
struct Supremum {
  double value = 0.0;
  int index = 0;
};

// Closed-form quantities for the Poisson birth model with logistic growth.
// Throughout, q = alpha * (1 - p_d) and g^(i) is the i-epoch logistic map.

/// s_k(m) = max_{0 <= i < k} q^i g^(i)(m), k >= 1: the best discounted
/// harvest of one point when k epochs remain.
Supremum s_k(double m, int k, const ModelParams& p);

/// s(m) = sup_{n >= 0} q^n g^(n)(m). Enumerates until the envelope K q^n
/// drops below the running maximum, so the returned index attains the sup.
Supremum s_inf(double m, const ModelParams& p);

/// Finite-horizon French threshold d_n = max{0, t_1, ..., t_{n-1}} with
/// t_k = K (q^k - e^{-k lambda}) / (1 - e^{-k lambda}). d_1 = 0.
double d_n(int n, const ModelParams& p);

/// d* = sup_{n >= 1} t_n floored at 0. The index is the attaining n, or 0
/// when the floor is binding (every t_n < 0, e.g. alpha = 0).
Supremum d_star(const ModelParams& p);

/// Optimal n-horizon value: R sum_x s_n(m) + R beta |W| sum_{k=1}^{n-1}
/// alpha^k int s_{n-k} dnu.
ValueReport v_n_poisson(const Pattern& x, int n, const ModelParams& p,
                        const IntegrationSpec& integ = Quadrature{});

/// Optimal infinite-horizon value: R sum_x s(m) + R beta |W| alpha / (1 - alpha) int s dnu.
ValueReport v_star_poisson(const Pattern& x, const ModelParams& p,
                           const IntegrationSpec& integ = Quadrature{});

/// Upper bound on the discounted value of any policy:
/// R K n(x) / (1 - q) + (R K beta |W| / p_d) alpha / (1 - alpha).
double lemma1_bound(const Pattern& x, const ModelParams& p);

/// Upper bound on expected discounted reward earned at epochs > T under any policy.
double tail_bound(const Pattern& x, int T, const ModelParams& p);

/// Smallest horizon T >= 1 whose unsimulated tail (epochs >= T) is bounded by
/// rel * lemma1_bound(x).
int certified_horizon(const Pattern& x, const ModelParams& p, double rel = 1e-3);

}  // namespace thinopt
