#include "effdim/models.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "effdim/error.hpp"

namespace effdim {

// ---------------------------------------------------------------------------
// ParamDomain

ParamDomain::ParamDomain(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require(!lower_.empty(), "parameter domain must have dimension >= 1");
  require(lower_.size() == upper_.size(), "domain bounds differ in length");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    require(std::isfinite(lower_[i]) && std::isfinite(upper_[i]) && lower_[i] < upper_[i],
            "domain axis " + std::to_string(i) + " needs finite lower < upper");
  }
  require(std::isfinite(volume()) && volume() > 0.0, "domain volume must be finite and positive");
}

ParamDomain ParamDomain::symmetric(std::size_t dim, double half_width) {
  require(half_width > 0.0, "half width must be positive");
  return ParamDomain(std::vector<double>(dim, -half_width), std::vector<double>(dim, half_width));
}

ParamDomain ParamDomain::unit_cube(std::size_t dim) {
  return ParamDomain(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

double ParamDomain::volume() const noexcept {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= upper_[i] - lower_[i];
  return v;
}

double ParamDomain::log_volume() const noexcept {
  double v = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) v += std::log(upper_[i] - lower_[i]);
  return v;
}

bool ParamDomain::contains(std::span<const double> theta) const noexcept {
  if (theta.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(theta[i] >= lower_[i] && theta[i] <= upper_[i])) return false;
  }
  return true;
}

ParamDomain ParamDomain::scaled_about_lower(double factor) const {
  std::vector<double> upper(dim());
  for (std::size_t i = 0; i < dim(); ++i) upper[i] = lower_[i] + factor * (upper_[i] - lower_[i]);
  return ParamDomain(lower_, std::move(upper));
}

// ---------------------------------------------------------------------------
// Model helpers

std::vector<double> Model::score(std::span<const double> x, std::span<const double> theta) const {
  std::vector<double> out(param_dim());
  score(x, theta, out);
  return out;
}

Observation Model::sample(std::span<const double> theta, Rng& rng) const {
  Observation out(observation_size());
  sample(theta, rng, out);
  return out;
}

namespace {

void check_sizes(const Model& model, std::span<const double> x, std::span<const double> theta) {
  require(theta.size() == model.param_dim(),
          model.name() + ": expected " + std::to_string(model.param_dim()) +
              " parameters, got " + std::to_string(theta.size()));
  require(x.size() == model.observation_size(),
          model.name() + ": expected observation of size " +
              std::to_string(model.observation_size()) + ", got " + std::to_string(x.size()));
}

// ---------------------------------------------------------------------------

class GaussianFixedVariance final : public Model {
 public:
  GaussianFixedVariance(std::size_t d, double sigma) : d_(d), sigma_(sigma) {
    require(d >= 1, "gaussian model needs d >= 1");
    require(sigma > 0.0 && std::isfinite(sigma), "gaussian model needs sigma > 0");
  }

  std::string name() const override { return "gaussian"; }
  std::size_t param_dim() const override { return d_; }
  std::size_t observation_size() const override { return d_; }

  double log_density(std::span<const double> x, std::span<const double> theta) const override {
    check_sizes(*this, x, theta);
    const double var = sigma_ * sigma_;
    double q = 0.0;
    for (std::size_t i = 0; i < d_; ++i) q += (x[i] - theta[i]) * (x[i] - theta[i]);
    return -0.5 * static_cast<double>(d_) * std::log(2.0 * std::numbers::pi * var) -
           0.5 * q / var;
  }

  void score(std::span<const double> x, std::span<const double> theta,
             std::span<double> out) const override {
    check_sizes(*this, x, theta);
    const double var = sigma_ * sigma_;
    for (std::size_t i = 0; i < d_; ++i) out[i] = (x[i] - theta[i]) / var;
  }

  void sample(std::span<const double> theta, Rng& rng, std::span<double> out) const override {
    require(theta.size() == d_, "gaussian: wrong parameter size");
    std::normal_distribution<double> normal(0.0, sigma_);
    for (std::size_t i = 0; i < d_; ++i) out[i] = theta[i] + normal(rng);
  }

  std::optional<linalg::SymMatrix> closed_form_fisher(
      std::span<const double> theta) const override {
    require(theta.size() == d_, "gaussian: wrong parameter size");
    return linalg::SymMatrix::identity(d_).scaled(1.0 / (sigma_ * sigma_));
  }

 private:
  std::size_t d_;
  double sigma_;
};

// ---------------------------------------------------------------------------

class Bernoulli final : public Model {
 public:
  std::string name() const override { return "bernoulli"; }
  std::size_t param_dim() const override { return 1; }
  std::size_t observation_size() const override { return 1; }

  double log_density(std::span<const double> x, std::span<const double> theta) const override {
    check_sizes(*this, x, theta);
    const double p = checked_theta(theta);
    return outcome(x) ? std::log(p) : std::log1p(-p);
  }

  void score(std::span<const double> x, std::span<const double> theta,
             std::span<double> out) const override {
    check_sizes(*this, x, theta);
    const double p = checked_theta(theta);
    out[0] = outcome(x) ? 1.0 / p : -1.0 / (1.0 - p);
  }

  void sample(std::span<const double> theta, Rng& rng, std::span<double> out) const override {
    const double p = checked_theta(theta);
    std::bernoulli_distribution draw(p);
    out[0] = draw(rng) ? 1.0 : 0.0;
  }

  std::optional<linalg::SymMatrix> closed_form_fisher(
      std::span<const double> theta) const override {
    const double p = checked_theta(theta);
    linalg::SymMatrix f(1);
    f.set(0, 0, 1.0 / (p * (1.0 - p)));
    return f;
  }

  std::optional<std::vector<Observation>> finite_support() const override {
    return std::vector<Observation>{{0.0}, {1.0}};
  }

  std::optional<double> max_log_likelihood(std::span<const Observation> xs) const override {
    std::size_t ones = 0;
    for (const auto& x : xs) {
      require(x.size() == 1, "bernoulli: observation must be a single value");
      ones += outcome(x) ? 1 : 0;
    }
    const double n = static_cast<double>(xs.size());
    const double k = static_cast<double>(ones);
    double ll = 0.0;
    if (ones > 0) ll += k * std::log(k / n);
    if (ones < xs.size()) ll += (n - k) * std::log((n - k) / n);
    return ll;
  }

  bool mle_is_empirical_frequency() const override { return true; }

 private:
  static double checked_theta(std::span<const double> theta) {
    require(theta.size() == 1, "bernoulli: expected one parameter");
    const double p = theta[0];
    require(p > 0.0 && p < 1.0, "bernoulli: theta must lie in (0, 1), got " + std::to_string(p));
    return p;
  }
  static bool outcome(std::span<const double> x) {
    require(x[0] == 0.0 || x[0] == 1.0, "bernoulli: observation must be 0 or 1");
    return x[0] == 1.0;
  }
};

}  // namespace

ModelPtr gaussian_fixed_variance(std::size_t d, double sigma) {
  return std::make_shared<GaussianFixedVariance>(d, sigma);
}

ModelPtr bernoulli() { return std::make_shared<Bernoulli>(); }

ParamDomain bernoulli_domain(double clip) {
  require(clip >= 0.0 && clip < 0.5, "bernoulli clip must lie in [0, 0.5)");
  return ParamDomain({clip}, {1.0 - clip});
}

// ---------------------------------------------------------------------------
// MlpGaussian

MlpGaussian::MlpGaussian(std::vector<std::size_t> layer_sizes, double sigma,
                         InputDistribution input)
    : layer_sizes_(std::move(layer_sizes)), sigma_(sigma), input_(input) {
  require(layer_sizes_.size() >= 2, "mlp needs at least an input and an output layer");
  for (std::size_t s : layer_sizes_) require(s >= 1, "mlp layer sizes must be >= 1");
  require(sigma_ > 0.0 && std::isfinite(sigma_), "mlp needs sigma > 0");
  require(input_.scale > 0.0 && std::isfinite(input_.scale), "mlp input scale must be positive");
  param_dim_ = parameter_count(layer_sizes_);
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    layer_offsets_.push_back(offset);
    offset += (layer_sizes_[l] + 1) * layer_sizes_[l + 1];
  }
}

std::size_t MlpGaussian::parameter_count(std::span<const std::size_t> layer_sizes) {
  std::size_t d = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    d += (layer_sizes[l] + 1) * layer_sizes[l + 1];
  }
  return d;
}

std::string MlpGaussian::name() const {
  std::string s = "mlp(";
  for (std::size_t l = 0; l < layer_sizes_.size(); ++l) {
    if (l) s += ",";
    s += std::to_string(layer_sizes_[l]);
  }
  return s + ")";
}

std::vector<std::vector<double>> MlpGaussian::forward(std::span<const double> u,
                                                      std::span<const double> theta) const {
  const std::size_t layers = layer_sizes_.size();
  std::vector<std::vector<double>> act(layers);
  act[0].assign(u.begin(), u.end());
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    const std::size_t in = layer_sizes_[l];
    const std::size_t out = layer_sizes_[l + 1];
    const double* w = theta.data() + layer_offsets_[l];
    const double* b = w + in * out;
    auto& next = act[l + 1];
    next.resize(out);
    for (std::size_t j = 0; j < out; ++j) {
      double z = b[j];
      for (std::size_t i = 0; i < in; ++i) z += w[j * in + i] * act[l][i];
      next[j] = (l + 2 < layers) ? std::tanh(z) : z;
    }
  }
  return act;
}

std::vector<double> MlpGaussian::predict(std::span<const double> u,
                                         std::span<const double> theta) const {
  require(u.size() == input_dim(), "mlp: input has wrong dimension");
  require(theta.size() == param_dim_, "mlp: wrong parameter size");
  return forward(u, theta).back();
}

double MlpGaussian::input_log_density(std::span<const double> u) const {
  const double m = static_cast<double>(u.size());
  if (input_.kind == InputDistribution::Kind::Uniform) {
    for (double v : u) {
      if (std::abs(v) > input_.scale) return -std::numeric_limits<double>::infinity();
    }
    return -m * std::log(2.0 * input_.scale);
  }
  double q = 0.0;
  for (double v : u) q += v * v;
  const double var = input_.scale * input_.scale;
  return -0.5 * m * std::log(2.0 * std::numbers::pi * var) - 0.5 * q / var;
}

double MlpGaussian::log_density(std::span<const double> x, std::span<const double> theta) const {
  check_sizes(*this, x, theta);
  const auto u = x.first(input_dim());
  const auto y = x.subspan(input_dim());
  const auto f = forward(u, theta).back();
  const double var = sigma_ * sigma_;
  double q = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) q += (y[k] - f[k]) * (y[k] - f[k]);
  return input_log_density(u) - 0.5 * static_cast<double>(f.size()) *
                                    std::log(2.0 * std::numbers::pi * var) -
         0.5 * q / var;
}

void MlpGaussian::score(std::span<const double> x, std::span<const double> theta,
                        std::span<double> out) const {
  check_sizes(*this, x, theta);
  require(out.size() == param_dim_, "mlp: score buffer has wrong size");
  const auto u = x.first(input_dim());
  const auto y = x.subspan(input_dim());
  const auto act = forward(u, theta);
  const std::size_t layers = layer_sizes_.size();
  const double var = sigma_ * sigma_;

  // delta holds d log P / d z for the current layer's pre-activations.
  std::vector<double> delta(output_dim());
  for (std::size_t k = 0; k < output_dim(); ++k) delta[k] = (y[k] - act.back()[k]) / var;

  for (std::size_t l = layers - 1; l-- > 0;) {
    const std::size_t in = layer_sizes_[l];
    const std::size_t outn = layer_sizes_[l + 1];
    const double* w = theta.data() + layer_offsets_[l];
    double* gw = out.data() + layer_offsets_[l];
    double* gb = gw + in * outn;
    for (std::size_t j = 0; j < outn; ++j) {
      for (std::size_t i = 0; i < in; ++i) gw[j * in + i] = delta[j] * act[l][i];
      gb[j] = delta[j];
    }
    if (l == 0) break;
    std::vector<double> prev(in, 0.0);
    for (std::size_t j = 0; j < outn; ++j) {
      for (std::size_t i = 0; i < in; ++i) prev[i] += w[j * in + i] * delta[j];
    }
    for (std::size_t i = 0; i < in; ++i) prev[i] *= 1.0 - act[l][i] * act[l][i];
    delta = std::move(prev);
  }
}

void MlpGaussian::sample(std::span<const double> theta, Rng& rng, std::span<double> out) const {
  require(theta.size() == param_dim_, "mlp: wrong parameter size");
  require(out.size() == observation_size(), "mlp: sample buffer has wrong size");
  const std::size_t m = input_dim();
  if (input_.kind == InputDistribution::Kind::Uniform) {
    std::uniform_real_distribution<double> unif(-input_.scale, input_.scale);
    for (std::size_t i = 0; i < m; ++i) out[i] = unif(rng);
  } else {
    std::normal_distribution<double> normal(0.0, input_.scale);
    for (std::size_t i = 0; i < m; ++i) out[i] = normal(rng);
  }
  const auto f = forward(out.first(m), theta).back();
  std::normal_distribution<double> noise(0.0, sigma_);
  for (std::size_t k = 0; k < f.size(); ++k) out[m + k] = f[k] + noise(rng);
}

ModelPtr mlp_gaussian(std::vector<std::size_t> layer_sizes, double sigma,
                      InputDistribution input) {
  return std::make_shared<MlpGaussian>(std::move(layer_sizes), sigma, input);
}

std::vector<std::size_t> default_mlp_layers(std::size_t width) { return {4, width, 1}; }

}  // namespace effdim
