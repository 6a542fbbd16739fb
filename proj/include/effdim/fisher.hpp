#ifndef EFFDIM_FISHER_HPP
#define EFFDIM_FISHER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "effdim/linalg.hpp"
#include "effdim/models.hpp"

namespace effdim {

// A finite set of parameter points with optional quadrature weights.
// Without weights every point counts 1/size(); with weights, sum_k w_k g(theta_k)
// approximates (1/V_Theta) * integral of g over the domain.
class ThetaSample {
 public:
  ThetaSample(std::size_t dim, std::vector<double> coords, std::vector<double> weights = {});

  // M points uniform on the domain, drawn from one generator derived from seed.
  static ThetaSample uniform(const ParamDomain& domain, std::size_t count, std::uint64_t seed);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  bool weighted() const noexcept { return !weights_.empty(); }
  std::span<const double> point(std::size_t k) const noexcept {
    return std::span<const double>(coords_).subspan(k * dim_, dim_);
  }
  double weight(std::size_t k) const noexcept {
    return weighted() ? weights_[k] : 1.0 / static_cast<double>(size());
  }
  std::vector<double> weights() const;

  void check_inside(const ParamDomain& domain) const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

// theta -> F(theta). Sources are a constant matrix, a model's analytic
// Fisher matrix, or the Monte Carlo average of score outer products.
// A positive gain multiplies every evaluation; it is kept apart from the
// base field so that trace normalization can cancel it exactly.
class FisherField {
 public:
  enum class Source { Constant, ClosedForm, MonteCarlo };

  static FisherField constant(linalg::SymMatrix matrix);
  static FisherField closed_form(ModelPtr model);
  static FisherField monte_carlo(ModelPtr model, std::size_t samples_per_theta,
                                 std::uint64_t seed);

  FisherField scaled(double factor) const;

  Source source() const noexcept { return source_; }
  std::size_t param_dim() const noexcept { return dim_; }
  double gain() const noexcept { return gain_; }
  std::size_t samples_per_theta() const noexcept { return samples_; }
  const ModelPtr& model() const noexcept { return model_; }

  // gain * F_base(theta). point_index selects the Monte Carlo generator
  // stream, so equal (seed, index, theta) always give the same matrix.
  linalg::SymMatrix evaluate(std::span<const double> theta, std::size_t point_index = 0) const;
  linalg::SymMatrix evaluate_base(std::span<const double> theta,
                                  std::size_t point_index = 0) const;

 private:
  FisherField() = default;

  Source source_ = Source::Constant;
  std::size_t dim_ = 0;
  double gain_ = 1.0;
  std::optional<linalg::SymMatrix> matrix_;
  ModelPtr model_;
  std::size_t samples_ = 0;
  std::uint64_t seed_ = 0;
};

linalg::SymMatrix eval_fisher(const FisherField& field, std::span<const double> theta,
                              std::size_t point_index = 0);

// Base-field matrices at every sample point (gain not applied), evaluated
// on up to `threads` workers. Point k uses generator stream k.
std::vector<linalg::SymMatrix> evaluate_base_at(const FisherField& field,
                                                const ThetaSample& thetas,
                                                unsigned threads = 1);

// Sample average of tr F over thetas, an estimate of (1/V) * integral tr F.
double mean_trace(const FisherField& field, const ParamDomain& domain,
                  const ThetaSample& thetas, unsigned threads = 1);

}  // namespace effdim

#endif  // EFFDIM_FISHER_HPP
