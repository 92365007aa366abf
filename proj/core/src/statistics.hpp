#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace thinopt::detail {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct SampleStats {
  double mean = 0.0;
  double std_error = 0.0;
};

// Mean and standard error of the mean, reduced in index order. The mean is
// accumulated as deviations from the first value, so a constant sample
// returns that constant exactly. std_error is 0 for fewer than two values.
template <class Get>
SampleStats sample_stats(std::size_t count, Get&& get) {
  SampleStats out;
  if (count == 0) return out;
  const double n = static_cast<double>(count);
  const double shift = get(std::size_t{0});
  CompensatedSum dev;
  for (std::size_t i = 1; i < count; ++i) dev.add(get(i) - shift);
  out.mean = shift + dev.value() / n;
  if (count < 2) return out;
  CompensatedSum squares;
  for (std::size_t i = 0; i < count; ++i) {
    const double d = get(i) - out.mean;
    squares.add(d * d);
  }
  out.std_error = std::sqrt(squares.value() / (n - 1.0) / n);
  return out;
}

inline SampleStats sample_stats(const std::vector<double>& values) {
  return sample_stats(values.size(), [&](std::size_t i) { return values[i]; });
}

}  // namespace thinopt::detail
