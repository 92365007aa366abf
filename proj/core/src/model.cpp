#include "thinopt/model.hpp"

#include <cmath>
#include <string>

#include "thinopt/errors.hpp"
#include "thinopt/numeric_format.hpp"

namespace thinopt {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace

MarkLaw MarkLaw::scaled_beta(double a, double b) {
  require(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b),
          "mark_law: beta shape parameters must be positive");
  return MarkLaw(ScaledBeta{a, b});
}

MarkLaw MarkLaw::point_mass(double m0) {
  require(m0 >= 0.0 && std::isfinite(m0), "mark_law: point mass must be a nonnegative mark");
  return MarkLaw(PointMass{m0});
}

double MarkLaw::mean(double cap) const {
  if (const auto* b = std::get_if<ScaledBeta>(&kind_)) return cap * b->a / (b->a + b->b);
  if (const auto* p = std::get_if<PointMass>(&kind_)) return p->m0;
  return 0.5 * cap;
}

void MarkLaw::validate(double cap) const {
  if (const auto* p = std::get_if<PointMass>(&kind_)) {
    require(p->m0 >= 0.0 && p->m0 <= cap, "mark_law: point mass " + format_double(p->m0) +
                                              " outside [0, " + format_double(cap) + "]");
  }
}

std::string MarkLaw::to_string() const {
  if (const auto* b = std::get_if<ScaledBeta>(&kind_)) {
    return "beta:" + format_double(b->a) + ":" + format_double(b->b);
  }
  if (const auto* p = std::get_if<PointMass>(&kind_)) return "point:" + format_double(p->m0);
  return "uniform";
}

MarkLaw MarkLaw::parse(std::string_view spec) {
  spec = trim(spec);
  const auto bad = [&] {
    return ParseError("mark_law: cannot parse '" + std::string(spec) +
                      "' (expected beta:<a>:<b>, uniform or point:<m0>)");
  };
  if (spec == "uniform") return uniform();
  if (spec.starts_with("point:")) {
    const auto m0 = parse_double(spec.substr(6));
    if (!m0) throw bad();
    return point_mass(*m0);
  }
  if (spec.starts_with("beta:")) {
    const auto rest = spec.substr(5);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw bad();
    const auto a = parse_double(rest.substr(0, colon));
    const auto b = parse_double(rest.substr(colon + 1));
    if (!a || !b) throw bad();
    return scaled_beta(*a, *b);
  }
  throw bad();
}

void ModelParams::validate() const {
  require(K > 0.0 && std::isfinite(K), "K: must be positive");
  require(lambda > 0.0 && std::isfinite(lambda), "lambda: must be positive");
  require(p_d > 0.0 && p_d < 1.0, "p_d: must lie in (0, 1)");
  require(beta >= 0.0 && std::isfinite(beta), "beta: must be nonnegative");
  require(alpha >= 0.0 && alpha < 1.0, "alpha: must lie in [0, 1)");
  require(R > 0.0 && std::isfinite(R), "R: must be positive");
  mark_law.validate(K);
}

void validate_integration(const IntegrationSpec& spec) {
  if (const auto* q = std::get_if<Quadrature>(&spec)) {
    require(q->rel_tol > 0.0, "integration: rel_tol must be positive");
  } else {
    require(std::get<MonteCarlo>(spec).samples >= 1, "integration: samples must be >= 1");
  }
}

ValueReport make_value_report(double initial, double births, ValueMethod method,
                              double std_error) {
  ValueReport report;
  report.initial_generation_term = initial;
  report.birth_stream_term = births;
  report.total = initial + births;
  report.method = method;
  report.integral_std_error = std_error;
  return report;
}

}  // namespace thinopt
