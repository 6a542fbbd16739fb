#ifndef EFFDIM_COMPLEXITY_HPP
#define EFFDIM_COMPLEXITY_HPP

#include <cstddef>
#include <optional>

#include "effdim/fisher.hpp"
#include "effdim/models.hpp"

namespace effdim::complexity {

// Parametric complexity of a model class at sample size n, in nats.
struct ComplexityReport {
  double n = 0.0;
  std::optional<double> exact;
  double asymptotic = 0.0;
  // log of the integral of sqrt(det F) over the domain.
  double fisher_volume_log = 0.0;
  // exact - asymptotic, when exact is available.
  std::optional<double> gap;
};

// Largest number of sequences (or count orbits) the exact sum may visit.
inline constexpr double kEnumerationBudget = 1e7;

// log sum_{x^n} P(x^n | mle(x^n)) over all s^n sequences.
double comp_exact_naive(const Model& model, std::size_t n);

// Same sum grouped by outcome counts, with multinomial multiplicities.
// Requires mle_is_empirical_frequency().
double comp_exact_orbits(const Model& model, std::size_t n);

// Orbit enumeration when the model allows it, otherwise the naive sum.
// Throws Unsupported for infinite support, a missing closed-form MLE, or
// a sum beyond kEnumerationBudget.
double comp_exact_discrete(const Model& model, std::size_t n);

// log integral sqrt(det F) dtheta = log V + log sum_k w_k sqrt(det F(theta_k)).
double fisher_volume_log(const FisherField& field, const ParamDomain& domain,
                         const ThetaSample& thetas, unsigned threads = 1);

// d/2 log(n / 2 pi) + log integral sqrt(det F).
double comp_asymptotic(const FisherField& field, const ParamDomain& domain, double n,
                       const ThetaSample& thetas, unsigned threads = 1);

// log integral sqrt(det g) with g = n/(2 pi) F, evaluated from g directly.
double riemannian_log_volume(const FisherField& field, const ParamDomain& domain, double n,
                             const ThetaSample& thetas, unsigned threads = 1);

// Tensor-product composite Gauss-Legendre rule on the domain with panels
// halving in width towards both ends of every axis (`levels` halvings per
// side). Suited to integrands with steep growth at the boundary, such as
// the Bernoulli Fisher volume element.
ThetaSample graded_gauss_legendre(const ParamDomain& domain, int levels = 40);

ComplexityReport complexity_report(const Model& model, const FisherField& field,
                                   const ParamDomain& domain, std::size_t n,
                                   const ThetaSample& thetas, unsigned threads = 1);

}  // namespace effdim::complexity

#endif  // EFFDIM_COMPLEXITY_HPP
