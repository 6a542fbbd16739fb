#include "effdim/logspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "effdim/error.hpp"

namespace effdim {

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double max = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(max)) return max;
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - max);
  return max + std::log(sum);
}

double log_mean_exp(std::span<const double> x) {
  require(!x.empty(), "log_mean_exp of an empty sequence");
  return log_sum_exp(x) - std::log(static_cast<double>(x.size()));
}

double log_weighted_sum_exp(std::span<const double> x, std::span<const double> weights) {
  require(x.size() == weights.size(), "values and weights differ in length");
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double max = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(max)) return max;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(weights[i] >= 0.0, "negative quadrature weight");
    sum += weights[i] * std::exp(x[i] - max);
  }
  return max + std::log(sum);
}

double log_mean_exp_std_error(std::span<const double> x) {
  require(!x.empty(), "standard error of an empty sequence");
  const std::size_t m = x.size();
  if (m < 2) return 0.0;
  const double max = *std::max_element(x.begin(), x.end());
  double mean = 0.0;
  for (double v : x) mean += std::exp(v - max);
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (double v : x) {
    const double d = std::exp(v - max) - mean;
    var += d * d;
  }
  var /= static_cast<double>(m - 1);
  return std::sqrt(var / static_cast<double>(m)) / mean;
}

}  // namespace effdim

namespace effdim {

void LogSumExpAccumulator::add(double x) {
  if (x == -std::numeric_limits<double>::infinity()) return;
  if (x > max_) {
    sum_ = sum_ * std::exp(max_ - x) + 1.0;
    max_ = x;
  } else {
    sum_ += std::exp(x - max_);
  }
}

double LogSumExpAccumulator::value() const {
  if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
  return max_ + std::log(sum_);
}

}  // namespace effdim
