#include "effdim/fisher.hpp"

#include <cmath>
#include <random>

#include "effdim/error.hpp"
#include "effdim/parallel.hpp"
#include "effdim/random.hpp"

namespace effdim {

using linalg::SymMatrix;

ThetaSample::ThetaSample(std::size_t dim, std::vector<double> coords, std::vector<double> weights)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  require(dim_ >= 1, "theta sample dimension must be >= 1");
  require(!coords_.empty() && coords_.size() % dim_ == 0,
          "theta sample must hold a positive whole number of points");
  require(weights_.empty() || weights_.size() == size(), "one weight per theta point required");
  for (double w : weights_) require(w >= 0.0 && std::isfinite(w), "weights must be finite, >= 0");
}

ThetaSample ThetaSample::uniform(const ParamDomain& domain, std::size_t count,
                                 std::uint64_t seed) {
  require(count >= 1, "need at least one theta point");
  Rng rng = make_rng(seed, Stream::ThetaSample);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t d = domain.dim();
  std::vector<double> coords(count * d);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      const double lo = domain.lower()[i];
      const double hi = domain.upper()[i];
      coords[k * d + i] = lo + (hi - lo) * unit(rng);
    }
  }
  return ThetaSample(d, std::move(coords));
}

std::vector<double> ThetaSample::weights() const {
  if (weighted()) return weights_;
  return std::vector<double>(size(), 1.0 / static_cast<double>(size()));
}

void ThetaSample::check_inside(const ParamDomain& domain) const {
  require(domain.dim() == dim_, "theta sample and domain differ in dimension");
  for (std::size_t k = 0; k < size(); ++k) {
    require(domain.contains(point(k)), "theta point " + std::to_string(k) + " lies outside the domain");
  }
}

// ---------------------------------------------------------------------------

FisherField FisherField::constant(SymMatrix matrix) {
  require(matrix.all_finite(), "constant Fisher matrix has non-finite entries");
  FisherField f;
  f.source_ = Source::Constant;
  f.dim_ = matrix.dim();
  f.matrix_ = std::move(matrix);
  return f;
}

FisherField FisherField::closed_form(ModelPtr model) {
  require(model != nullptr, "closed-form Fisher field needs a model");
  FisherField f;
  f.source_ = Source::ClosedForm;
  f.dim_ = model->param_dim();
  f.model_ = std::move(model);
  return f;
}

FisherField FisherField::monte_carlo(ModelPtr model, std::size_t samples_per_theta,
                                     std::uint64_t seed) {
  require(model != nullptr, "Monte Carlo Fisher field needs a model");
  require(samples_per_theta >= 1, "samples_per_theta must be >= 1");
  FisherField f;
  f.source_ = Source::MonteCarlo;
  f.dim_ = model->param_dim();
  f.model_ = std::move(model);
  f.samples_ = samples_per_theta;
  f.seed_ = seed;
  return f;
}

FisherField FisherField::scaled(double factor) const {
  require(factor > 0.0 && std::isfinite(factor), "Fisher field scale must be positive and finite");
  FisherField f = *this;
  f.gain_ *= factor;
  return f;
}

SymMatrix FisherField::evaluate_base(std::span<const double> theta, std::size_t point_index) const {
  require(theta.size() == dim_, "theta has " + std::to_string(theta.size()) +
                                    " coordinates, field expects " + std::to_string(dim_));
  switch (source_) {
    case Source::Constant:
      return *matrix_;
    case Source::ClosedForm: {
      auto f = model_->closed_form_fisher(theta);
      if (!f) fail(ErrorCode::Unsupported, model_->name() + " has no closed-form Fisher matrix");
      return std::move(*f);
    }
    case Source::MonteCarlo: {
      Rng rng = make_rng(seed_, Stream::FisherPoint, point_index);
      SymMatrix acc(dim_);
      std::vector<double> x(model_->observation_size());
      std::vector<double> s(dim_);
      for (std::size_t k = 0; k < samples_; ++k) {
        model_->sample(theta, rng, x);
        model_->score(x, theta, s);
        acc.add_outer(s);
      }
      acc *= 1.0 / static_cast<double>(samples_);
      if (!acc.all_finite()) {
        fail(ErrorCode::NotPositiveDefinite, "Monte Carlo Fisher estimate is not finite");
      }
      return acc;
    }
  }
  fail(ErrorCode::InvalidInput, "unknown Fisher source");
}

SymMatrix FisherField::evaluate(std::span<const double> theta, std::size_t point_index) const {
  SymMatrix f = evaluate_base(theta, point_index);
  if (gain_ != 1.0) f *= gain_;
  return f;
}

SymMatrix eval_fisher(const FisherField& field, std::span<const double> theta,
                      std::size_t point_index) {
  return field.evaluate(theta, point_index);
}

std::vector<SymMatrix> evaluate_base_at(const FisherField& field, const ThetaSample& thetas,
                                        unsigned threads) {
  require(thetas.dim() == field.param_dim(), "theta sample and Fisher field differ in dimension");
  std::vector<std::optional<SymMatrix>> slots(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t k) {
    try {
      slots[k] = field.evaluate_base(thetas.point(k), k);
    } catch (const Error& e) {
      throw e.with_theta_index(k);
    }
  });
  std::vector<SymMatrix> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double mean_trace(const FisherField& field, const ParamDomain& domain, const ThetaSample& thetas,
                  unsigned threads) {
  thetas.check_inside(domain);
  const auto matrices = evaluate_base_at(field, thetas, threads);
  double sum = 0.0;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    sum += thetas.weight(k) * linalg::trace(matrices[k]);
  }
  return field.gain() * sum;
}

}  // namespace effdim
