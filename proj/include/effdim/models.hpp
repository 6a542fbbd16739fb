#ifndef EFFDIM_MODELS_HPP
#define EFFDIM_MODELS_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "effdim/linalg.hpp"
#include "effdim/random.hpp"

namespace effdim {

// One data point, flattened. Scalar models use a single entry; the MLP
// model stores the input followed by the output.
using Observation = std::vector<double>;

// Axis-aligned parameter box Theta with finite positive volume.
class ParamDomain {
 public:
  ParamDomain(std::vector<double> lower, std::vector<double> upper);

  static ParamDomain symmetric(std::size_t dim, double half_width);
  static ParamDomain unit_cube(std::size_t dim);

  std::size_t dim() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double volume() const noexcept;
  double log_volume() const noexcept;
  bool contains(std::span<const double> theta) const noexcept;
  ParamDomain scaled_about_lower(double factor) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

// An i.i.d. statistical model P(x | theta).
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual std::size_t param_dim() const = 0;
  virtual std::size_t observation_size() const = 0;

  virtual double log_density(std::span<const double> x, std::span<const double> theta) const = 0;
  // Writes grad_theta log P(x | theta) into out (length param_dim()).
  virtual void score(std::span<const double> x, std::span<const double> theta,
                     std::span<double> out) const = 0;
  // Writes one draw X ~ P(. | theta) into out (length observation_size()).
  virtual void sample(std::span<const double> theta, Rng& rng, std::span<double> out) const = 0;

  virtual std::optional<linalg::SymMatrix> closed_form_fisher(
      std::span<const double> theta) const {
    (void)theta;
    return std::nullopt;
  }

  // Finite-support models list every outcome here.
  virtual std::optional<std::vector<Observation>> finite_support() const { return std::nullopt; }

  // sup_theta log P(x^n | theta) in closed form, when the model has one.
  // The supremum may sit on the boundary of the parameter space.
  virtual std::optional<double> max_log_likelihood(std::span<const Observation> xs) const {
    (void)xs;
    return std::nullopt;
  }

  // Set when the data are categorical over finite_support() and the MLE is
  // the vector of empirical frequencies, so the maximized likelihood only
  // depends on outcome counts.
  virtual bool mle_is_empirical_frequency() const { return false; }

  std::vector<double> score(std::span<const double> x, std::span<const double> theta) const;
  Observation sample(std::span<const double> theta, Rng& rng) const;
};

using ModelPtr = std::shared_ptr<const Model>;

// X ~ Normal(theta, sigma^2 Id_d).
ModelPtr gaussian_fixed_variance(std::size_t d, double sigma);

// X in {0, 1}, P(X = 1) = theta, theta in (0, 1).
ModelPtr bernoulli();

// Clip width keeping Bernoulli integrals finite at the endpoints.
inline constexpr double kBernoulliClip = 1e-6;
ParamDomain bernoulli_domain(double clip = kBernoulliClip);

struct InputDistribution {
  enum class Kind { Uniform, Normal };
  Kind kind = Kind::Uniform;
  // Uniform[-scale, scale] or Normal(0, scale^2) per coordinate.
  double scale = 1.0;
};

// Feedforward regression network with tanh hidden layers, identity
// output and Gaussian output noise. Observations are (u, y) pairs with
// u ~ input distribution and y ~ Normal(net_theta(u), sigma^2 Id).
// Parameters are laid out layer by layer: the weight matrix (row-major,
// out x in) followed by the bias vector.
class MlpGaussian final : public Model {
 public:
  MlpGaussian(std::vector<std::size_t> layer_sizes, double sigma, InputDistribution input);

  static std::size_t parameter_count(std::span<const std::size_t> layer_sizes);

  std::string name() const override;
  std::size_t param_dim() const override { return param_dim_; }
  std::size_t observation_size() const override {
    return layer_sizes_.front() + layer_sizes_.back();
  }
  std::size_t input_dim() const noexcept { return layer_sizes_.front(); }
  std::size_t output_dim() const noexcept { return layer_sizes_.back(); }
  const std::vector<std::size_t>& layer_sizes() const noexcept { return layer_sizes_; }

  double log_density(std::span<const double> x, std::span<const double> theta) const override;
  void score(std::span<const double> x, std::span<const double> theta,
             std::span<double> out) const override;
  void sample(std::span<const double> theta, Rng& rng, std::span<double> out) const override;

  // net_theta(u).
  std::vector<double> predict(std::span<const double> u, std::span<const double> theta) const;

 private:
  // Activations of every layer; activations[0] is the input.
  std::vector<std::vector<double>> forward(std::span<const double> u,
                                           std::span<const double> theta) const;
  double input_log_density(std::span<const double> u) const;

  std::vector<std::size_t> layer_sizes_;
  std::vector<std::size_t> layer_offsets_;
  std::size_t param_dim_;
  double sigma_;
  InputDistribution input_;
};

ModelPtr mlp_gaussian(std::vector<std::size_t> layer_sizes, double sigma = 1.0,
                      InputDistribution input = {});

// Single hidden layer network with 4 inputs, `width` tanh units and one
// output: 6 * width + 1 parameters (width 9 gives d = 55).
std::vector<std::size_t> default_mlp_layers(std::size_t width = 9);

}  // namespace effdim

#endif  // EFFDIM_MODELS_HPP
