#ifndef EFFDIM_LOGSPACE_HPP
#define EFFDIM_LOGSPACE_HPP

#include <limits>
#include <span>

namespace effdim {

// log(sum_i exp(x_i)); -inf for an empty input.
double log_sum_exp(std::span<const double> x);

// log(mean_i exp(x_i)). Requires a nonempty input.
double log_mean_exp(std::span<const double> x);

// log(sum_i w_i exp(x_i)) for nonnegative weights.
double log_weighted_sum_exp(std::span<const double> x, std::span<const double> weights);

// Delta-method standard error of log(mean_i exp(x_i)) under i.i.d.
// sampling: sd(exp(x - max)) / (sqrt(M) * mean(exp(x - max))).
double log_mean_exp_std_error(std::span<const double> x);

// Streaming log-sum-exp for sequences too long to materialize. The result
// depends on the order of add() calls.
class LogSumExpAccumulator {
 public:
  void add(double x);
  double value() const;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

}  // namespace effdim

#endif  // EFFDIM_LOGSPACE_HPP
