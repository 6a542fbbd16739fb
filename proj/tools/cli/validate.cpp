#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cli/commands.hpp"
#include "effdim/boxcount.hpp"
#include "effdim/complexity.hpp"
#include "effdim/random.hpp"

namespace effdim::cli {

namespace {

using linalg::SymMatrix;

constexpr std::uint64_t kValidationSeed = 20201;

SymMatrix random_spd(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> b(d * d);
  for (double& v : b) v = normal(rng);
  SymMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      double s = i == j ? 0.1 : 0.0;
      for (std::size_t k = 0; k < d; ++k) s += b[i * d + k] * b[j * d + k];
      m.set(i, j, s);
    }
  }
  return m;
}

std::string join(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

SuiteResult eigh_reconstruction() {
  Rng rng = make_rng(kValidationSeed, Stream::Validation, 1);
  std::uniform_int_distribution<std::size_t> dim(1, 16);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = dim(rng);
    SymMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) m.set(i, j, normal(rng));
    }
    const auto back = linalg::reconstruct(linalg::eigh(m));
    double err = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) err = std::max(err, std::abs(back(i, j) - m(i, j)));
    }
    worst = std::max(worst, err / std::max(1.0, m.max_abs()));
  }
  std::ostringstream detail;
  detail << "50 random matrices, worst relative error " << worst;
  return {"eigh reconstruction", worst <= 1e-10, detail.str()};
}

SuiteResult boxcount_bracketing() {
  Rng rng = make_rng(kValidationSeed, Stream::Validation, 2);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_real_distribution<double> extent(0.1, 10.0);
  std::uniform_real_distribution<double> log_scale(0.0, 3.0);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = dim(rng);
    std::vector<double> s(d);
    for (double& v : s) v = extent(rng);
    const double c = std::pow(10.0, log_scale(rng));
    const auto count = boxcount::cube_count_constant(s, c);
    const double log_ratio = count.log_count - boxcount::log_determinant_surrogate(s, c);
    const double bound = 0.5 * static_cast<double>(d) * std::numbers::ln2;
    if (std::abs(log_ratio) > bound) ++bad;
  }
  return {"boxcount bracketing", bad == 0,
          join({"1000 instances, ", std::to_string(bad), " outside [2^(-d/2), 2^(d/2)]"})};
}

SuiteResult boxcount_convergence() {
  Rng rng = make_rng(kValidationSeed, Stream::Validation, 3);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_real_distribution<double> extent(0.5, 10.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(dim(rng));
    for (double& v : s) v = extent(rng);
    const auto count = boxcount::cube_count_constant(s, 1e3);
    const double ratio = std::exp(count.log_count - boxcount::log_determinant_surrogate(s, 1e3));
    worst = std::max(worst, std::abs(ratio - 1.0));
  }
  std::ostringstream detail;
  detail << "c = 1000, worst |ratio - 1| = " << worst;
  return {"boxcount surrogate convergence", worst < 0.02, detail.str()};
}

SuiteResult lattice_agreement() {
  Rng rng = make_rng(kValidationSeed, Stream::Validation, 4);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  std::uniform_real_distribution<double> extent(0.1, 10.0);
  std::uniform_real_distribution<double> scale(1.0, 10.0);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = dim(rng);
    std::vector<double> s(d), s2(d);
    for (std::size_t i = 0; i < d; ++i) {
      s2[i] = extent(rng);
      s2[i] *= s2[i];
      s[i] = std::sqrt(s2[i]);
    }
    const double c = scale(rng);
    const auto literal = boxcount::lattice_box_count(ParamDomain::unit_cube(d),
                                                     SymMatrix::diagonal(s2), c);
    if (literal.count != boxcount::cube_count_constant(s, c).count) ++mismatches;
  }
  return {"lattice agreement", mismatches == 0,
          join({"200 diagonal metrics, ", std::to_string(mismatches), " mismatches"})};
}

SuiteResult riemannian_identity(unsigned threads) {
  Rng rng = make_rng(kValidationSeed, Stream::Validation, 5);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_real_distribution<double> log_n(1.0, 8.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = dim(rng);
    const auto field = FisherField::constant(random_spd(d, rng));
    const auto domain = ParamDomain::symmetric(d, 0.5 + static_cast<double>(trial % 3));
    const auto thetas = ThetaSample::uniform(domain, 4, kValidationSeed + trial);
    const double n = std::pow(10.0, log_n(rng));
    const double a = complexity::comp_asymptotic(field, domain, n, thetas, threads);
    const double b = complexity::riemannian_log_volume(field, domain, n, thetas, threads);
    worst = std::max(worst, std::abs(a - b));
  }
  std::ostringstream detail;
  detail << "100 constant fields, worst |difference| = " << worst;
  return {"riemannian identity", worst <= 1e-12, detail.str()};
}

SuiteResult orbit_enumeration() {
  const auto model = bernoulli();
  double worst = 0.0;
  for (std::size_t n = 1; n <= 12; ++n) {
    worst = std::max(worst, std::abs(complexity::comp_exact_orbits(*model, n) -
                                     complexity::comp_exact_naive(*model, n)));
  }
  std::ostringstream detail;
  detail << "bernoulli n = 1..12, worst |orbit - naive| = " << worst;
  return {"orbit enumeration", worst <= 1e-12, detail.str()};
}

SuiteResult bernoulli_gap(bool bits, unsigned threads) {
  const auto model = bernoulli();
  const auto field = FisherField::closed_form(model);
  const auto domain = bernoulli_domain();
  const auto rule = complexity::graded_gauss_legendre(domain);
  std::ostringstream detail;
  double previous = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  double last = 0.0;
  for (std::size_t n : {100, 1000, 10000}) {
    const auto r = complexity::complexity_report(*model, field, domain, n, rule, threads);
    const double gap = std::abs(*r.gap);
    decreasing = decreasing && gap < previous;
    previous = gap;
    last = gap;
    detail << "n=" << n << " gap " << (bits ? gap / std::numbers::ln2 : gap)
           << (bits ? " bits; " : " nats; ");
  }
  return {"bernoulli exact vs asymptotic", decreasing && last < 0.05, detail.str()};
}

SuiteResult identity_closed_form() {
  double worst = 0.0;
  for (std::size_t d : {1, 5, 55}) {
    for (double n : {1e2, 1e4, 1e8}) {
      const double c = n / (2.0 * std::numbers::pi);
      const double expected = static_cast<double>(d) * (1.0 + std::log1p(1.0 / c) / std::log(c));
      worst = std::max(worst, std::abs(effective_dimension_constant(SymMatrix::identity(d), n) -
                                       expected));
    }
  }
  std::ostringstream detail;
  detail << "Fhat = Id, worst |error| = " << worst;
  return {"identity closed form", worst <= 1e-12, detail.str()};
}

}  // namespace

std::vector<SuiteResult> run_validation_suites(bool bits, unsigned threads) {
  return {eigh_reconstruction(),        boxcount_bracketing(),
          boxcount_convergence(),       lattice_agreement(),
          riemannian_identity(threads), orbit_enumeration(),
          bernoulli_gap(bits, threads), identity_closed_form()};
}

}  // namespace effdim::cli
