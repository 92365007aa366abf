#include "thinopt/dynamics.hpp"

#include <algorithm>
#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/beta_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <cmath>
#include <vector>

#include "thinopt/errors.hpp"

namespace thinopt {
namespace {

// Uniform cell grid for "is anything within distance <= radius" queries.
class NeighborGrid {
 public:
  NeighborGrid(const Window& w, double radius) : window_(w), radius_(radius) {
    constexpr double kMaxCellsPerAxis = 1024.0;
    cell_ = std::max({radius, w.width() / kMaxCellsPerAxis, w.height() / kMaxCellsPerAxis});
    nx_ = std::max(1, static_cast<int>(std::ceil(w.width() / cell_)));
    ny_ = std::max(1, static_cast<int>(std::ceil(w.height() / cell_)));
    cells_.resize(static_cast<std::size_t>(nx_) * ny_);
  }

  void insert(Point2 p) { cells_[index(cell_x(p), cell_y(p))].push_back(p); }

  void erase(Point2 p) {
    auto& cell = cells_[index(cell_x(p), cell_y(p))];
    const auto it = std::find(cell.begin(), cell.end(), p);
    if (it != cell.end()) {
      *it = cell.back();
      cell.pop_back();
    }
  }

  bool any_within(Point2 p) const {
    const int cx = cell_x(p);
    const int cy = cell_y(p);
    for (int ix = std::max(0, cx - 1); ix <= std::min(nx_ - 1, cx + 1); ++ix) {
      for (int iy = std::max(0, cy - 1); iy <= std::min(ny_ - 1, cy + 1); ++iy) {
        for (const auto& q : cells_[index(ix, iy)]) {
          if (distance(p, q) <= radius_) return true;
        }
      }
    }
    return false;
  }

 private:
  int cell_x(Point2 p) const {
    return std::clamp(static_cast<int>(std::floor((p.x - window_.x_min()) / cell_)), 0, nx_ - 1);
  }
  int cell_y(Point2 p) const {
    return std::clamp(static_cast<int>(std::floor((p.y - window_.y_min()) / cell_)), 0, ny_ - 1);
  }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * static_cast<std::size_t>(ny_) +
           static_cast<std::size_t>(iy);
  }

  Window window_;
  double radius_;
  double cell_ = 1.0;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<std::vector<Point2>> cells_;
};

Point2 uniform_location(const Window& w, RngStream& rng) {
  const double x = rng.uniform(w.x_min(), w.x_max());
  const double y = rng.uniform(w.y_min(), w.y_max());
  return {x, y};
}

// Deaths and growth of the retained points, in storage order.
Pattern survivors(const Pattern& retained, const Kernel& k, RngStream& rng) {
  const double p_d = k.params().p_d;
  Pattern out;
  out.reserve(retained.size());
  for (const auto& pt : retained) {
    if (rng.uniform01() < p_d) continue;
    out.push_back({pt.location, k.growth().step(pt.mark)});
  }
  return out;
}

int poisson_count(double mean, RngStream& rng) {
  if (!(mean > 0.0)) return 0;
  boost::random::poisson_distribution<int, double> count(mean);
  return count(rng);
}

int iterations_per_sweep(double activity, const Window& w) {
  return std::max(1, static_cast<int>(std::ceil(2.0 * activity * w.area())));
}

// Birth-death Metropolis-Hastings chain for the hard-core Gibbs process.
// Births and deaths are proposed with probability 1/2 each.
class HardcoreChain {
 public:
  HardcoreChain(const Window& w, double activity, double hc)
      : window_(w), grid_(w, hc), mass_(activity * w.area()),
        per_sweep_(iterations_per_sweep(activity, w)) {}

  void sweep(RngStream& rng) {
    for (int it = 0; it < per_sweep_; ++it) {
      const double n = static_cast<double>(points_.size());
      if (rng.uniform01() < 0.5) {
        const Point2 p = uniform_location(window_, rng);
        if (rng.uniform01() < mass_ / (n + 1.0) && !grid_.any_within(p)) {
          grid_.insert(p);
          points_.push_back(p);
        }
      } else if (!points_.empty()) {
        const auto idx = static_cast<std::size_t>(rng.below(points_.size()));
        if (rng.uniform01() < n / mass_) {
          grid_.erase(points_[idx]);
          points_[idx] = points_.back();
          points_.pop_back();
        }
      }
    }
  }

  const std::vector<Point2>& points() const { return points_; }

 private:
  Window window_;
  NeighborGrid grid_;
  std::vector<Point2> points_;
  double mass_;
  int per_sweep_;
};

// Long-run mean point count of the chain divided by |W|.
double pilot_intensity(const Window& w, double activity, double hc, std::uint64_t seed) {
  constexpr int kBurnIn = 100;
  constexpr int kRecorded = 1000;
  RngStream rng(seed, 0);
  HardcoreChain chain(w, activity, hc);
  double total = 0.0;
  for (int sweep = 0; sweep < kBurnIn + kRecorded; ++sweep) {
    chain.sweep(rng);
    if (sweep >= kBurnIn) total += static_cast<double>(chain.points().size());
  }
  return total / kRecorded / w.area();
}

}  // namespace

Kernel Kernel::poisson(const ModelParams& p) {
  p.validate();
  return Kernel(KernelKind::PoissonBDG, p, p.logistic_growth());
}

Kernel Kernel::hardcore(const ModelParams& p, GrowthFunction g) {
  p.validate();
  if (g.cap() != p.K) throw PreconditionError("hard-core kernel: growth cap must equal K");
  return Kernel(KernelKind::HardcoreBDG, p, std::move(g));
}

double sample_mark(const MarkLaw& law, double cap, RngStream& rng) {
  const auto& kind = law.kind();
  if (const auto* p = std::get_if<MarkLaw::PointMass>(&kind)) return p->m0;
  if (std::holds_alternative<MarkLaw::Uniform>(kind)) return cap * rng.uniform01();
  const auto& shape = std::get<MarkLaw::ScaledBeta>(kind);
  boost::random::beta_distribution<double> beta(shape.a, shape.b);
  return std::clamp(cap * beta(rng), 0.0, cap);
}

Pattern step_poisson(const Pattern& retained, const Kernel& k, RngStream& rng) {
  const auto& p = k.params();
  Pattern next = survivors(retained, k, rng);
  const int births = poisson_count(p.beta * p.window.area(), rng);
  next.reserve(next.size() + static_cast<std::size_t>(births));
  for (int i = 0; i < births; ++i) {
    const Point2 loc = uniform_location(p.window, rng);
    next.push_back({loc, sample_mark(p.mark_law, p.K, rng)});
  }
  return next;
}

Pattern step_hardcore(const Pattern& retained, const Kernel& k, RngStream& rng) {
  const auto& p = k.params();
  const double hc = k.hardcore_distance();
  if (const auto bad = find_hardcore_violation(retained, hc)) {
    throw PreconditionError("step_hardcore: retained points " + std::to_string(bad->first) +
                            " and " + std::to_string(bad->second) + " violate the hard core");
  }

  // Exclusion zone is built from the whole retained set, dead or alive.
  NeighborGrid occupied(p.window, hc);
  for (const auto& pt : retained) occupied.insert(pt.location);

  Pattern next = survivors(retained, k, rng);
  const int proposals = poisson_count(p.beta * p.window.area(), rng);
  for (int i = 0; i < proposals; ++i) {
    const Point2 loc = uniform_location(p.window, rng);
    const double mark = sample_mark(p.mark_law, p.K, rng);
    if (occupied.any_within(loc)) continue;
    occupied.insert(loc);
    next.push_back({loc, mark});
  }
  return next;
}

Pattern step(const Pattern& retained, const Kernel& k, RngStream& rng) {
  return k.kind() == KernelKind::PoissonBDG ? step_poisson(retained, k, rng)
                                            : step_hardcore(retained, k, rng);
}

GibbsSample sample_hardcore_gibbs(const Window& w, double activity, double hc, int sweeps,
                                  const MarkLaw& law, double cap, RngStream& rng) {
  if (!(activity > 0.0)) throw PreconditionError("gibbs: activity must be positive");
  if (!(hc > 0.0)) throw PreconditionError("gibbs: hard-core distance must be positive");
  if (sweeps < 1) throw PreconditionError("gibbs: sweeps must be >= 1");

  HardcoreChain chain(w, activity, hc);
  for (int sweep = 0; sweep < sweeps; ++sweep) chain.sweep(rng);
  const auto& points = chain.points();

  GibbsSample out;
  out.pattern.reserve(points.size());
  for (const auto& loc : points) out.pattern.push_back({loc, sample_mark(law, cap, rng)});
  out.empirical_intensity = static_cast<double>(points.size()) / w.area();
  return out;
}

ActivityCalibration calibrate_hardcore_activity(const Window& w, double target_intensity,
                                                double hc, std::uint64_t seed, double rel_tol) {
  if (!(target_intensity > 0.0)) throw PreconditionError("calibration: target must be positive");
  ActivityCalibration best{target_intensity, pilot_intensity(w, target_intensity, hc, seed), 1};
  const auto closer = [&](double estimate) {
    return std::abs(estimate - target_intensity) < std::abs(best.estimated_intensity - target_intensity);
  };
  if (std::abs(best.estimated_intensity - target_intensity) <= rel_tol * target_intensity) {
    return best;
  }

  // The hard core only removes points, so the intensity sits below the activity.
  double lo = target_intensity;
  double hi = 2.0 * target_intensity;
  int iterations = 1;
  for (; iterations < 20; ++iterations) {
    const double estimate = pilot_intensity(w, hi, hc, seed);
    if (closer(estimate)) best = {hi, estimate, iterations + 1};
    if (estimate >= target_intensity) break;
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double estimate = pilot_intensity(w, mid, hc, seed);
    ++iterations;
    if (closer(estimate)) best = {mid, estimate, iterations};
    if (std::abs(estimate - target_intensity) <= rel_tol * target_intensity) break;
    (estimate < target_intensity ? lo : hi) = mid;
  }
  best.iterations = iterations;
  return best;
}

}  // namespace thinopt
