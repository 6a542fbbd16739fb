#include "effdim/complexity.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "effdim/error.hpp"
#include "effdim/logspace.hpp"
#include "effdim/parallel.hpp"

namespace effdim::complexity {

namespace {

std::vector<Observation> require_support(const Model& model) {
  auto support = model.finite_support();
  if (!support || support->empty()) {
    fail(ErrorCode::Unsupported, model.name() + " does not have a finite support");
  }
  return std::move(*support);
}

double log_binomial_count(std::size_t n, std::size_t s) {
  // log C(n + s - 1, s - 1), the number of count vectors.
  return std::lgamma(static_cast<double>(n + s)) - std::lgamma(static_cast<double>(s)) -
         std::lgamma(static_cast<double>(n + 1));
}

// 1/2 log det of every evaluated matrix, optionally scaled by c first.
std::vector<double> half_log_dets(const FisherField& field, const ParamDomain& domain,
                                  const ThetaSample& thetas, std::optional<double> c,
                                  unsigned threads) {
  require(domain.dim() == field.param_dim(), "domain and Fisher field differ in dimension");
  thetas.check_inside(domain);
  std::vector<double> out(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t k) {
    try {
      linalg::SymMatrix f = field.evaluate(thetas.point(k), k);
      if (c) f *= *c;
      const auto spectrum = linalg::eigh(f, {.want_eigenvectors = false});
      double sum = 0.0;
      for (double lambda : spectrum.eigenvalues) {
        if (!(lambda > 0.0)) {
          fail(ErrorCode::NotPositiveDefinite, "Fisher matrix is singular, log det undefined");
        }
        sum += std::log(lambda);
      }
      out[k] = 0.5 * sum;
    } catch (const Error& e) {
      throw e.with_theta_index(k);
    }
  });
  return out;
}

}  // namespace

double comp_exact_naive(const Model& model, std::size_t n) {
  require(n >= 1, "sample size must be >= 1");
  const auto support = require_support(model);
  const std::size_t s = support.size();
  if (static_cast<double>(n) * std::log(static_cast<double>(s)) > std::log(kEnumerationBudget)) {
    fail(ErrorCode::Unsupported, "s^n = " + std::to_string(s) + "^" + std::to_string(n) +
                                     " exceeds the enumeration budget");
  }

  std::vector<std::size_t> digits(n, 0);
  std::vector<Observation> xs(n, support[0]);
  LogSumExpAccumulator acc;
  while (true) {
    const auto ll = model.max_log_likelihood(xs);
    if (!ll) fail(ErrorCode::Unsupported, model.name() + " has no closed-form MLE");
    acc.add(*ll);

    std::size_t i = 0;
    while (i < n && ++digits[i] == s) {
      digits[i] = 0;
      xs[i] = support[0];
      ++i;
    }
    if (i == n) break;
    xs[i] = support[digits[i]];
  }
  return acc.value();
}

double comp_exact_orbits(const Model& model, std::size_t n) {
  require(n >= 1, "sample size must be >= 1");
  if (!model.mle_is_empirical_frequency()) {
    fail(ErrorCode::Unsupported, model.name() + " cannot be enumerated by outcome counts");
  }
  const std::size_t s = require_support(model).size();
  if (log_binomial_count(n, s) > std::log(kEnumerationBudget)) {
    fail(ErrorCode::Unsupported, "count enumeration exceeds the enumeration budget");
  }

  const double nd = static_cast<double>(n);
  const double log_n_factorial = std::lgamma(nd + 1.0);

  // Odometer over the first s - 1 counts with sum <= n; the last count
  // takes the remainder.
  std::vector<std::size_t> head(s - 1, 0);
  std::size_t used = 0;
  LogSumExpAccumulator acc;
  auto add_term = [&](std::size_t c) {
    const double k = static_cast<double>(c);
    double t = -std::lgamma(k + 1.0);
    if (c > 0) t += k * std::log(k / nd);
    return t;
  };
  while (true) {
    double term = log_n_factorial + add_term(n - used);
    for (std::size_t c : head) term += add_term(c);
    acc.add(term);

    std::size_t i = 0;
    for (; i < head.size(); ++i) {
      if (used < n) {
        ++head[i];
        ++used;
        break;
      }
      used -= head[i];
      head[i] = 0;
    }
    if (i == head.size()) break;
  }
  return acc.value();
}

double comp_exact_discrete(const Model& model, std::size_t n) {
  if (model.mle_is_empirical_frequency()) return comp_exact_orbits(model, n);
  return comp_exact_naive(model, n);
}

double fisher_volume_log(const FisherField& field, const ParamDomain& domain,
                         const ThetaSample& thetas, unsigned threads) {
  const auto terms = half_log_dets(field, domain, thetas, std::nullopt, threads);
  return domain.log_volume() + log_weighted_sum_exp(terms, thetas.weights());
}

double comp_asymptotic(const FisherField& field, const ParamDomain& domain, double n,
                       const ThetaSample& thetas, unsigned threads) {
  require(n > 0.0 && std::isfinite(n), "n must be positive");
  const double d = static_cast<double>(field.param_dim());
  return 0.5 * d * std::log(n / (2.0 * std::numbers::pi)) +
         fisher_volume_log(field, domain, thetas, threads);
}

double riemannian_log_volume(const FisherField& field, const ParamDomain& domain, double n,
                             const ThetaSample& thetas, unsigned threads) {
  require(n > 0.0 && std::isfinite(n), "n must be positive");
  const auto terms =
      half_log_dets(field, domain, thetas, n / (2.0 * std::numbers::pi), threads);
  return domain.log_volume() + log_weighted_sum_exp(terms, thetas.weights());
}

ThetaSample graded_gauss_legendre(const ParamDomain& domain, int levels) {
  require(levels >= 0 && levels <= 60, "levels must lie in [0, 60]");
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = Rule::abscissa();
  const auto& weight = Rule::weights();

  // Per-axis nodes and weights, weights summing to 1.
  struct Axis {
    std::vector<double> nodes, weights;
  };
  std::vector<Axis> axes;
  for (std::size_t i = 0; i < domain.dim(); ++i) {
    const double lo = domain.lower()[i];
    const double hi = domain.upper()[i];
    const double half = 0.5 * (hi - lo);
    std::vector<std::pair<double, double>> panels;
    for (int side = 0; side < 2; ++side) {
      // Panels measured as offsets from the endpoint towards the middle.
      std::vector<double> cuts{0.0};
      for (int j = levels; j >= 0; --j) cuts.push_back(half * std::ldexp(1.0, -j));
      for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        if (side == 0) {
          panels.emplace_back(lo + cuts[p], lo + cuts[p + 1]);
        } else {
          panels.emplace_back(hi - cuts[p + 1], hi - cuts[p]);
        }
      }
    }
    Axis axis;
    const double width = hi - lo;
    for (const auto& [a, b] : panels) {
      const double mid = 0.5 * (a + b);
      const double rad = 0.5 * (b - a);
      for (std::size_t q = 0; q < abscissa.size(); ++q) {
        for (double sign : {-1.0, 1.0}) {
          if (abscissa[q] == 0.0 && sign > 0.0) continue;
          axis.nodes.push_back(mid + sign * rad * abscissa[q]);
          axis.weights.push_back(weight[q] * rad / width);
        }
      }
    }
    axes.push_back(std::move(axis));
  }

  double total = 1.0;
  for (const auto& a : axes) total *= static_cast<double>(a.nodes.size());
  require(total <= kEnumerationBudget, "quadrature grid is too large");

  const std::size_t d = domain.dim();
  const auto points = static_cast<std::size_t>(total);
  std::vector<double> coords(points * d);
  std::vector<double> weights(points);
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t rem = p;
    double w = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t q = rem % axes[i].nodes.size();
      rem /= axes[i].nodes.size();
      coords[p * d + i] = axes[i].nodes[q];
      w *= axes[i].weights[q];
    }
    weights[p] = w;
  }
  return ThetaSample(d, std::move(coords), std::move(weights));
}

ComplexityReport complexity_report(const Model& model, const FisherField& field,
                                   const ParamDomain& domain, std::size_t n,
                                   const ThetaSample& thetas, unsigned threads) {
  ComplexityReport r;
  r.n = static_cast<double>(n);
  r.fisher_volume_log = fisher_volume_log(field, domain, thetas, threads);
  r.asymptotic = 0.5 * static_cast<double>(field.param_dim()) *
                     std::log(r.n / (2.0 * std::numbers::pi)) +
                 r.fisher_volume_log;
  if (model.finite_support()) {
    r.exact = comp_exact_discrete(model, n);
    r.gap = *r.exact - r.asymptotic;
  }
  return r;
}

}  // namespace effdim::complexity
