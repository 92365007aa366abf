#include "thinopt/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <tuple>

#include "thinopt/errors.hpp"
#include "thinopt/numeric_format.hpp"

namespace thinopt {
namespace {

auto point_key(const MarkedPoint& p) { return std::tuple(p.location.x, p.location.y, p.mark); }

}  // namespace

std::vector<Point2> Pattern::locations() const {
  std::vector<Point2> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.location);
  return out;
}

bool Pattern::is_simple() const {
  auto locs = locations();
  std::sort(locs.begin(), locs.end(),
            [](const Point2& a, const Point2& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  return std::adjacent_find(locs.begin(), locs.end()) == locs.end();
}

bool same_points(const Pattern& a, const Pattern& b) {
  if (a.size() != b.size()) return false;
  auto lhs = a.points();
  auto rhs = b.points();
  const auto by_key = [](const MarkedPoint& p, const MarkedPoint& q) {
    return point_key(p) < point_key(q);
  };
  std::sort(lhs.begin(), lhs.end(), by_key);
  std::sort(rhs.begin(), rhs.end(), by_key);
  return lhs == rhs;
}

void validate_pattern(const Pattern& x, const Window& w, double cap) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& p = x[i];
    if (!(p.mark >= 0.0 && p.mark <= cap)) {
      throw PreconditionError("point " + std::to_string(i) + ": mark " + format_double(p.mark) +
                              " outside [0, " + format_double(cap) + "]");
    }
    if (!w.contains(p.location)) {
      throw PreconditionError("point " + std::to_string(i) + ": location outside the window");
    }
  }
  if (!x.is_simple()) throw PreconditionError("pattern has two points at the same location");
}

void validate_action(const Pattern& x, const Action& a) {
  std::vector<bool> seen(x.size(), false);
  for (const auto idx : a.retained) {
    if (idx >= x.size()) {
      throw PreconditionError("action index " + std::to_string(idx) + " out of range");
    }
    if (seen[idx]) throw PreconditionError("action index " + std::to_string(idx) + " repeated");
    seen[idx] = true;
  }
}

Pattern apply_action(const Pattern& x, const Action& a) {
  validate_action(x, a);
  Pattern out;
  out.reserve(a.retained.size());
  for (const auto idx : a.retained) out.push_back(x[idx]);
  return out;
}

double mark_sum(const Pattern& x) {
  double total = 0.0;
  for (const auto& p : x) total += p.mark;
  return total;
}

double reward(const Pattern& x, const Action& a, double reward_scale) {
  validate_action(x, a);
  std::vector<bool> kept(x.size(), false);
  for (const auto idx : a.retained) kept[idx] = true;
  double removed = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!kept[i]) removed += x[i].mark;
  }
  return reward_scale * removed;
}

std::optional<std::pair<std::size_t, std::size_t>> find_hardcore_violation(const Pattern& x,
                                                                           double hc_distance) {
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&x](std::size_t a, std::size_t b) {
    return x[a].location.x < x[b].location.x;
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& p = x[order[i]].location;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& q = x[order[j]].location;
      if (q.x - p.x > hc_distance) break;
      if (distance(p, q) <= hc_distance) {
        return std::pair(std::min(order[i], order[j]), std::max(order[i], order[j]));
      }
    }
  }
  return std::nullopt;
}

bool is_hardcore(const Pattern& x, double hc_distance) {
  if (!(hc_distance > 0.0)) throw PreconditionError("is_hardcore: distance must be positive");
  return min_pairwise_distance(x.locations()) > hc_distance;
}

void write_pattern_csv(std::ostream& out, const Pattern& x) {
  out << "x,y,mark\n";
  for (const auto& p : x) {
    out << format_double(p.location.x) << ',' << format_double(p.location.y) << ','
        << format_double(p.mark) << '\n';
  }
}

Pattern read_pattern_csv(std::istream& in) {
  Pattern x;
  std::string line;
  std::size_t line_no = 0;
  std::size_t row = 0;  // data rows, header excluded
  bool header_seen = false;
  auto where = [&] { return "pattern CSV row " + std::to_string(row) + " (line " + std::to_string(line_no) + ")"; };
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (!header_seen) {
      if (text != "x,y,mark") {
        throw ParseError("pattern CSV line " + std::to_string(line_no) + ": expected header x,y,mark");
      }
      header_seen = true;
      continue;
    }
    ++row;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      fields.push_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 3) {
      throw ParseError(where() + ": expected 3 fields, got " +
                       std::to_string(fields.size()));
    }
    const auto px = parse_double(fields[0]);
    const auto py = parse_double(fields[1]);
    const auto pm = parse_double(fields[2]);
    if (!px || !py || !pm || !std::isfinite(*px) || !std::isfinite(*py) || !std::isfinite(*pm)) {
      throw ParseError(where() + ": non-numeric field");
    }
    x.push_back({{*px, *py}, *pm});
  }
  if (!header_seen) throw ParseError("pattern CSV: missing header x,y,mark");
  return x;
}

}  // namespace thinopt
