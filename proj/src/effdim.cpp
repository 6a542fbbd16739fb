#include "effdim/effdim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "effdim/error.hpp"
#include "effdim/logspace.hpp"
#include "effdim/parallel.hpp"

namespace effdim {

using linalg::SymMatrix;

double scale_ratio(double n) {
  require(std::isfinite(n) && n > 2.0 * std::numbers::pi,
          "n must exceed 2*pi, got " + std::to_string(n));
  return n / (2.0 * std::numbers::pi);
}

double normalize_field(const FisherField& field, const ParamDomain& domain,
                       const ThetaSample& thetas, unsigned threads) {
  const double t = mean_trace(field, domain, thetas, threads);
  if (!(t > kDegenerateTrace)) {
    fail(ErrorCode::DegenerateFisher, "mean Fisher trace " + std::to_string(t) + " is not positive");
  }
  return static_cast<double>(field.param_dim()) / t;
}

NormalizedSpectra NormalizedSpectra::compute(const FisherField& field, const ParamDomain& domain,
                                             const ThetaSample& thetas, unsigned threads) {
  require(domain.dim() == field.param_dim(), "domain and Fisher field differ in dimension");
  thetas.check_inside(domain);

  NormalizedSpectra out;
  out.d_ = field.param_dim();
  out.weighted_ = thetas.weighted();
  out.weights_ = thetas.weights();

  const auto matrices = evaluate_base_at(field, thetas, threads);

  // Normalize against the base field: the gain cancels identically.
  double base_trace = 0.0;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    base_trace += thetas.weight(k) * linalg::trace(matrices[k]);
  }
  const double mean = field.gain() * base_trace;
  if (!(mean > kDegenerateTrace)) {
    out.degenerate_ = true;
    out.eigenvalues_.assign(matrices.size(), std::vector<double>(out.d_, 0.0));
    return out;
  }
  const double base_scale = static_cast<double>(out.d_) / base_trace;
  out.normalization_factor_ = static_cast<double>(out.d_) / mean;

  out.eigenvalues_.resize(matrices.size());
  parallel_for(matrices.size(), threads, [&](std::size_t k) {
    try {
      auto spectrum = linalg::eigh(matrices[k], {.want_eigenvectors = false});
      for (double& lambda : spectrum.eigenvalues) lambda *= base_scale;
      out.eigenvalues_[k] = std::move(spectrum.eigenvalues);
    } catch (const Error& e) {
      throw e.with_theta_index(k);
    }
  });
  return out;
}

EffDimReport NormalizedSpectra::at(double n) const {
  const double c = scale_ratio(n);
  EffDimReport report;
  report.n = n;
  report.d = d_;
  report.num_theta_points = eigenvalues_.size();
  report.normalization_factor = normalization_factor_;
  if (degenerate_) {
    report.degenerate = true;
    return report;
  }

  std::vector<double> half_log_det(eigenvalues_.size());
  for (std::size_t k = 0; k < eigenvalues_.size(); ++k) {
    try {
      half_log_det[k] = 0.5 * linalg::log_det_shift(eigenvalues_[k], c);
    } catch (const Error& e) {
      throw e.with_theta_index(k);
    }
  }

  const double log_c = std::log(c);
  if (weighted_) {
    report.log_integral = log_weighted_sum_exp(half_log_det, weights_);
    report.mc_std_error = 0.0;
  } else {
    report.log_integral = log_mean_exp(half_log_det);
    report.mc_std_error = 2.0 * log_mean_exp_std_error(half_log_det) / log_c;
  }
  report.dim_eff = 2.0 * report.log_integral / log_c;
  return report;
}

EffDimReport effective_dimension(const FisherField& field, const ParamDomain& domain, double n,
                                 const ThetaSample& thetas, unsigned threads) {
  scale_ratio(n);
  return NormalizedSpectra::compute(field, domain, thetas, threads).at(n);
}

EffDimReport effective_dimension(const FisherField& field, const ParamDomain& domain, double n,
                                 std::size_t num_theta_points, std::uint64_t seed,
                                 unsigned threads) {
  scale_ratio(n);
  const auto thetas = ThetaSample::uniform(domain, num_theta_points, seed);
  return effective_dimension(field, domain, n, thetas, threads);
}

double effective_dimension_constant(const SymMatrix& fhat, double n) {
  const double c = scale_ratio(n);
  const double d = static_cast<double>(fhat.dim());
  const double t = linalg::trace(fhat);
  require(std::abs(t - d) <= 1e-9 * d,
          "normalized Fisher matrix must have trace d = " + std::to_string(fhat.dim()) +
              ", got " + std::to_string(t));
  return linalg::log_det_shift(fhat, c) / std::log(c);
}

double effective_dimension_identity(std::size_t d, double n) {
  const double c = scale_ratio(n);
  return static_cast<double>(d) * (1.0 + std::log1p(1.0 / c) / std::log(c));
}

}  // namespace effdim
