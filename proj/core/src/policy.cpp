#include "thinopt/policy.hpp"

#include <cmath>
#include <string>

#include "thinopt/analytic_hardcore.hpp"
#include "thinopt/analytic_poisson.hpp"
#include "thinopt/errors.hpp"
#include "thinopt/numeric_format.hpp"

namespace thinopt {

Action french(const Pattern& x, double d) {
  Action a;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].mark < d) a.retained.push_back(i);
  }
  return a;
}

Action german(const Pattern& x, double d, double f, RngStream& rng) {
  Action a;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].mark <= d && rng.uniform01() < f) continue;
    a.retained.push_back(i);
  }
  return a;
}

Action tilde_rule(const Pattern& x, int n, const ModelParams& p, const GrowthFunction& g) {
  Action a;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& pt = x[i];
    const double penalty = p.K * p.beta * ball_window_area(pt.location, p.K, p.window);
    const double keep_value =
        p.alpha * ((1.0 - p.p_d) * s_tilde_n(pt.location, g.step(pt.mark), n, p, g) - penalty);
    if (pt.mark < keep_value) a.retained.push_back(i);
  }
  return a;
}

Policy Policy::french(double d) {
  if (!(d >= 0.0)) throw PreconditionError("french: threshold must be >= 0");
  return Policy(French{d});
}

Policy Policy::german(double d, double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw PreconditionError("german: fraction must lie in [0, 1]");
  return Policy(German{d, f});
}

Policy Policy::tilde(int n, const ModelParams& p, GrowthFunction g) {
  if (n < 1) throw PreconditionError("tilde: horizon must be >= 1");
  return Policy(TildeRule{n, p, std::move(g)});
}

Policy Policy::horizon_matched_french(int horizon, const ModelParams& p) {
  if (horizon < 1) throw PreconditionError("horizon-matched french: horizon must be >= 1");
  std::vector<double> thresholds;
  for (int i = 0; i < horizon; ++i) thresholds.push_back(d_n(horizon - i, p));
  return Policy(FrenchSchedule{std::move(thresholds)});
}

Policy Policy::custom(std::function<Action(const Pattern&)> rule, std::string name) {
  if (!rule) throw PreconditionError("custom policy: empty rule");
  return Policy(Custom{std::move(rule), std::move(name)});
}

Action Policy::act(const Pattern& x, std::size_t epoch, RngStream& rng) const {
  return std::visit(
      [&](const auto& k) -> Action {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, French>) {
          return thinopt::french(x, k.threshold);
        } else if constexpr (std::is_same_v<T, German>) {
          return thinopt::german(x, k.threshold, k.fraction, rng);
        } else if constexpr (std::is_same_v<T, TildeRule>) {
          return thinopt::tilde_rule(x, k.horizon, k.params, k.growth);
        } else if constexpr (std::is_same_v<T, KeepAll>) {
          Action a;
          for (std::size_t i = 0; i < x.size(); ++i) a.retained.push_back(i);
          return a;
        } else if constexpr (std::is_same_v<T, RemoveAll>) {
          return Action{};
        } else if constexpr (std::is_same_v<T, FrenchSchedule>) {
          const auto i = std::min(epoch, k.thresholds.size() - 1);
          return thinopt::french(x, k.thresholds[i]);
        } else {
          Action a = k.rule(x);
          validate_action(x, a);
          return a;
        }
      },
      kind_);
}

std::string Policy::name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, French>) {
          return "french:" + format_double(k.threshold);
        } else if constexpr (std::is_same_v<T, German>) {
          return "german:" + format_double(k.threshold) + ":" + format_double(k.fraction);
        } else if constexpr (std::is_same_v<T, TildeRule>) {
          return "tilde:" + std::to_string(k.horizon);
        } else if constexpr (std::is_same_v<T, KeepAll>) {
          return "keepall";
        } else if constexpr (std::is_same_v<T, RemoveAll>) {
          return "removeall";
        } else if constexpr (std::is_same_v<T, FrenchSchedule>) {
          return "french-schedule:" + std::to_string(k.thresholds.size());
        } else {
          return k.name;
        }
      },
      kind_);
}

Policy parse_policy(std::string_view spec, const ModelParams& p) {
  const std::string text(trim(spec));
  const auto bad = [&] {
    return ParseError("unknown policy '" + text + "'; valid forms: " + std::string(kPolicyForms));
  };
  std::vector<std::string_view> parts;
  std::string_view rest = text;
  while (true) {
    const auto colon = rest.find(':');
    parts.push_back(rest.substr(0, colon));
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }

  if (parts[0] == "keepall" && parts.size() == 1) return Policy::keep_all();
  if (parts[0] == "removeall" && parts.size() == 1) return Policy::remove_all();
  if (parts[0] == "french" && parts.size() == 2) {
    if (parts[1] == "dstar") return Policy::french(d_star(p).value);
    const auto d = parse_double(parts[1]);
    if (!d || !(*d >= 0.0)) throw bad();
    return Policy::french(*d);
  }
  if (parts[0] == "german" && parts.size() == 3) {
    const auto d = parse_double(parts[1]);
    const auto f = parse_double(parts[2]);
    if (!d || !f || !(*f >= 0.0 && *f <= 1.0)) throw bad();
    return Policy::german(*d, *f);
  }
  if (parts[0] == "tilde" && parts.size() == 2) {
    const auto n = parse_integer(parts[1]);
    if (!n || *n < 1 || *n > 100'000) throw bad();
    return Policy::tilde(static_cast<int>(*n), p, p.logistic_growth());
  }
  throw bad();
}

}  // namespace thinopt
