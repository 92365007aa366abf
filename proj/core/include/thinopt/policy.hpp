#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "thinopt/growth.hpp"
#include "thinopt/model.hpp"
#include "thinopt/pattern.hpp"
#include "thinopt/rng.hpp"

namespace thinopt {

// French thinning: remove every point with mark >= d.
Action french(const Pattern& x, double d);

// German thinning: each point with mark <= d is removed independently with
// probability f; larger points are kept.
Action german(const Pattern& x, double d, double f, RngStream& rng);

// Removes (loc, m) iff m >= alpha [ (1 - p_d) s_tilde_n(loc, g(m))
//                                   - K beta |b(loc, K) n W| ]; ties are removed.
Action tilde_rule(const Pattern& x, int n, const ModelParams& p, const GrowthFunction& g);

/// A deterministic (or, for German thinning, randomized) Markov thinning
/// rule. All rules are stationary except FrenchSchedule, whose threshold
/// depends on the epoch.
class Policy {
 public:
  struct French {
    double threshold;
  };
  struct German {
    double threshold;
    double fraction;
  };
  struct TildeRule {
    int horizon;
    ModelParams params;
    GrowthFunction growth;
  };
  struct KeepAll {};
  struct RemoveAll {};
  // Threshold thresholds[i] at epoch i (the last entry repeats afterwards).
  struct FrenchSchedule {
    std::vector<double> thresholds;
  };
  struct Custom {
    std::function<Action(const Pattern&)> rule;
    std::string name;
  };
  using Kind = std::variant<French, German, TildeRule, KeepAll, RemoveAll, FrenchSchedule, Custom>;

  static Policy french(double d);
  static Policy german(double d, double f);
  static Policy tilde(int n, const ModelParams& p, GrowthFunction g);
  static Policy keep_all() { return Policy(KeepAll{}); }
  static Policy remove_all() { return Policy(RemoveAll{}); }
  // Optimal non-stationary French thinning for an n-epoch horizon:
  // threshold d_{n-i} at epoch i.
  static Policy horizon_matched_french(int horizon, const ModelParams& p);
  static Policy custom(std::function<Action(const Pattern&)> rule, std::string name = "custom");

  Action act(const Pattern& x, std::size_t epoch, RngStream& rng) const;

  const Kind& kind() const { return kind_; }
  bool is_randomized() const { return std::holds_alternative<German>(kind_); }
  std::string name() const;

 private:
  explicit Policy(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Parses `french:<d>`, `french:dstar`, `german:<d>:<f>`, `tilde:<n>`,
/// `keepall`, `removeall`. Throws ParseError listing the accepted forms.
Policy parse_policy(std::string_view spec, const ModelParams& p);

inline constexpr std::string_view kPolicyForms =
    "french:<d>, french:dstar, german:<d>:<f>, tilde:<n>, keepall, removeall";

}  // namespace thinopt
