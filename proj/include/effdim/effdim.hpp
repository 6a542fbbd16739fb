#ifndef EFFDIM_EFFDIM_HPP
#define EFFDIM_EFFDIM_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "effdim/fisher.hpp"
#include "effdim/linalg.hpp"
#include "effdim/models.hpp"

namespace effdim {

// Effective dimension at scale n:
//
//   dim_eff(n) = 2 log( (1/V) int sqrt(det(Id + n/(2 pi) Fhat(theta))) dtheta ) / log(n / (2 pi))
//
// with Fhat = d V / (int tr F) * F, so that Fhat has average trace d.
struct EffDimReport {
  double n = 0.0;
  std::size_t d = 0;
  double dim_eff = 0.0;
  // log of the V-normalized integral of sqrt(det(Id + n/(2 pi) Fhat)).
  double log_integral = 0.0;
  // Delta-method standard error of dim_eff over the theta sample.
  double mc_std_error = 0.0;
  std::size_t num_theta_points = 0;
  // d V / int tr F, the factor mapping F to Fhat.
  double normalization_factor = 0.0;
  // Set when the field carries no information (mean trace <= 1e-14);
  // dim_eff is then 0 by convention.
  bool degenerate = false;
};

inline constexpr double kDegenerateTrace = 1e-14;

// Smallest admissible scale, n > 2 pi.
double scale_ratio(double n);

// Returns d / mean_trace(field, domain, thetas). Throws DegenerateFisher
// when the mean trace is <= kDegenerateTrace.
double normalize_field(const FisherField& field, const ParamDomain& domain,
                       const ThetaSample& thetas, unsigned threads = 1);

// Trace-normalized spectra of the Fisher field at every theta point. The
// integrand depends on n only through n / (2 pi), so one instance serves
// any number of scales.
class NormalizedSpectra {
 public:
  static NormalizedSpectra compute(const FisherField& field, const ParamDomain& domain,
                                   const ThetaSample& thetas, unsigned threads = 1);

  EffDimReport at(double n) const;

  std::size_t param_dim() const noexcept { return d_; }
  std::size_t num_points() const noexcept { return eigenvalues_.size(); }
  bool degenerate() const noexcept { return degenerate_; }
  double normalization_factor() const noexcept { return normalization_factor_; }
  // Eigenvalues of Fhat at point k, descending.
  const std::vector<double>& eigenvalues(std::size_t k) const { return eigenvalues_[k]; }

 private:
  std::size_t d_ = 0;
  bool degenerate_ = false;
  double normalization_factor_ = 0.0;
  std::vector<std::vector<double>> eigenvalues_;
  std::vector<double> weights_;
  bool weighted_ = false;
};

// Draws num_theta_points uniform points on the domain from seed and
// evaluates dim_eff at n. The same points serve the trace normalization.
EffDimReport effective_dimension(const FisherField& field, const ParamDomain& domain, double n,
                                 std::size_t num_theta_points, std::uint64_t seed,
                                 unsigned threads = 1);

EffDimReport effective_dimension(const FisherField& field, const ParamDomain& domain, double n,
                                 const ThetaSample& thetas, unsigned threads = 1);

// dim_eff for a constant, already normalized Fhat (trace within 1e-9 d of d):
// sum_i log(1 + n/(2 pi) lambda_i) / log(n / (2 pi)).
double effective_dimension_constant(const linalg::SymMatrix& fhat, double n);

// Fhat = Id_d: d (1 + log(1 + 2 pi / n) / log(n / (2 pi))).
double effective_dimension_identity(std::size_t d, double n);

}  // namespace effdim

#endif  // EFFDIM_EFFDIM_HPP
