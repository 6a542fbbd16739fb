#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "effdim/complexity.hpp"
#include "effdim/error.hpp"

using namespace effdim;
using namespace effdim::complexity;
using linalg::SymMatrix;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Three-outcome categorical model, theta = (p0, p1), p2 = 1 - p0 - p1.
class Categorical3 final : public Model {
 public:
  explicit Categorical3(bool grouped) : grouped_(grouped) {}

  std::string name() const override { return "categorical3"; }
  std::size_t param_dim() const override { return 2; }
  std::size_t observation_size() const override { return 1; }

  double log_density(std::span<const double> x, std::span<const double> theta) const override {
    return std::log(prob(x, theta));
  }
  void score(std::span<const double> x, std::span<const double> theta,
             std::span<double> out) const override {
    const auto j = static_cast<int>(x[0]);
    const double p = prob(x, theta);
    out[0] = (j == 0 ? 1.0 : 0.0) / p - (j == 2 ? 1.0 : 0.0) / p;
    out[1] = (j == 1 ? 1.0 : 0.0) / p - (j == 2 ? 1.0 : 0.0) / p;
  }
  void sample(std::span<const double> theta, Rng& rng, std::span<double> out) const override {
    std::discrete_distribution<int> dist({theta[0], theta[1], 1.0 - theta[0] - theta[1]});
    out[0] = dist(rng);
  }
  std::optional<std::vector<Observation>> finite_support() const override {
    return std::vector<Observation>{{0.0}, {1.0}, {2.0}};
  }
  std::optional<double> max_log_likelihood(std::span<const Observation> xs) const override {
    double counts[3] = {0, 0, 0};
    for (const auto& x : xs) counts[static_cast<int>(x[0])] += 1.0;
    const double n = static_cast<double>(xs.size());
    double ll = 0.0;
    for (double c : counts) {
      if (c > 0) ll += c * std::log(c / n);
    }
    return ll;
  }
  bool mle_is_empirical_frequency() const override { return grouped_; }

 private:
  static double prob(std::span<const double> x, std::span<const double> theta) {
    const auto j = static_cast<int>(x[0]);
    return j == 0 ? theta[0] : j == 1 ? theta[1] : 1.0 - theta[0] - theta[1];
  }
  bool grouped_;
};

// sum over k of C(n, k) k^k (n - k)^(n - k), in exact integers.
unsigned long long grouped_integer_sum(unsigned n) {
  unsigned long long total = 0;
  unsigned long long binom = 1;
  for (unsigned k = 0; k <= n; ++k) {
    unsigned long long a = 1, b = 1;
    for (unsigned i = 0; i < k; ++i) a *= k;
    for (unsigned i = 0; i < n - k; ++i) b *= n - k;
    total += binom * a * b;
    binom = binom * (n - k) / (k + 1);
  }
  return total;
}

// Same sum over all 2^n sequences, one term per sequence.
unsigned long long sequence_integer_sum(unsigned n) {
  unsigned long long total = 0;
  for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
    const unsigned k = static_cast<unsigned>(__builtin_popcountll(mask));
    unsigned long long a = 1, b = 1;
    for (unsigned i = 0; i < k; ++i) a *= k;
    for (unsigned i = 0; i < n - k; ++i) b *= n - k;
    total += a * b;
  }
  return total;
}

SymMatrix random_spd(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  SymMatrix m = SymMatrix::identity(d).scaled(0.1);
  for (std::size_t r = 0; r < d + 1; ++r) {
    std::vector<double> v(d);
    for (double& x : v) x = normal(rng);
    m.add_outer(v);
  }
  return m;
}

}  // namespace

TEST_CASE("comp_exact_discrete examples") {
  const auto b = bernoulli();
  CHECK(comp_exact_discrete(*b, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(comp_exact_discrete(*b, 2) == doctest::Approx(std::log(2.5)).epsilon(1e-15));
  CHECK(comp_exact_naive(*b, 2) == doctest::Approx(std::log(2.5)).epsilon(1e-15));
  // n = 3: 1 + 3 (4/27) + 3 (4/27) + 1 = 2 + 24/27.
  CHECK(comp_exact_orbits(*b, 3) == doctest::Approx(std::log(2.0 + 24.0 / 27.0)).epsilon(1e-15));
}

TEST_CASE("count orbits reproduce the sequence sum") {
  // The Bernoulli sum times n^n is an integer; the grouped and per-sequence
  // integer sums agree exactly.
  for (unsigned n = 1; n <= 12; ++n) {
    const auto grouped = grouped_integer_sum(n);
    CHECK(grouped == sequence_integer_sum(n));
    const double expected =
        std::log(static_cast<double>(grouped)) - static_cast<double>(n) * std::log(n);
    const auto b = bernoulli();
    CHECK(comp_exact_orbits(*b, n) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(comp_exact_naive(*b, n) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(std::abs(comp_exact_orbits(*b, n) - comp_exact_naive(*b, n)) < 1e-12);
  }
  const Categorical3 grouped(true), plain(false);
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(std::abs(comp_exact_discrete(grouped, n) - comp_exact_discrete(plain, n)) < 1e-12);
  }
  CHECK(comp_exact_discrete(grouped, 1) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("comp_exact errors") {
  const auto b = bernoulli();
  try {
    comp_exact_naive(*b, 40);
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
  CHECK_NOTHROW(comp_exact_orbits(*b, 20000));
  CHECK_THROWS_AS(comp_exact_orbits(Categorical3(true), 10000), Error);
  CHECK_THROWS_AS(comp_exact_orbits(Categorical3(false), 5), Error);
  try {
    comp_exact_discrete(*gaussian_fixed_variance(1, 1.0), 3);
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
  CHECK_THROWS_AS(comp_exact_discrete(*b, 0), Error);
}

TEST_CASE("arcsine integral by graded quadrature") {
  const auto field = FisherField::closed_form(bernoulli());
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-9}) {
    const auto domain = bernoulli_domain(eps);
    const auto rule = graded_gauss_legendre(domain);
    const double integral = std::exp(fisher_volume_log(field, domain, rule));
    const double exact = std::numbers::pi - 4.0 * std::asin(std::sqrt(eps));
    CHECK(integral == doctest::Approx(exact).epsilon(1e-10));
  }
  const auto domain = bernoulli_domain(1e-12);
  const double integral =
      std::exp(fisher_volume_log(field, domain, graded_gauss_legendre(domain)));
  CHECK(std::abs(integral - std::numbers::pi) < 1e-5);
}

TEST_CASE("graded rule weights integrate polynomials") {
  const ParamDomain box({-1.0, 0.0}, {2.0, 0.5});
  const auto rule = graded_gauss_legendre(box, 6);
  double total = 0.0, moment = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    total += rule.weight(k);
    const auto p = rule.point(k);
    moment += rule.weight(k) * p[0] * p[0] * p[1];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  // (1/V) int x^2 y = (1/1.5) * 3 * (1/8) = 0.25.
  CHECK(moment == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("comp_asymptotic examples") {
  const auto unit = ParamDomain::unit_cube(1);
  const auto thetas = ThetaSample::uniform(unit, 16, 3);
  const auto gauss = FisherField::closed_form(gaussian_fixed_variance(1, 1.0));
  for (double n : {10.0, 1e3, 1e6}) {
    CHECK(comp_asymptotic(gauss, unit, n, thetas) ==
          doctest::Approx(0.5 * std::log(n / kTwoPi)).epsilon(1e-14));
  }
  for (std::size_t d : {1, 3, 7}) {
    const auto box = ParamDomain::unit_cube(d);
    const auto f = FisherField::constant(SymMatrix::identity(d));
    CHECK(comp_asymptotic(f, box, 1e4, ThetaSample::uniform(box, 4, 1)) ==
          doctest::Approx(0.5 * static_cast<double>(d) * std::log(1e4 / kTwoPi)));
  }

  const auto b = FisherField::closed_form(bernoulli());
  const auto domain = bernoulli_domain(1e-12);
  const double n = 1e4;
  CHECK(comp_asymptotic(b, domain, n, graded_gauss_legendre(domain)) ==
        doctest::Approx(0.5 * std::log(n / kTwoPi) + std::log(std::numbers::pi)).epsilon(1e-5));
}

TEST_CASE("riemannian_log_volume examples") {
  const auto box = ParamDomain::unit_cube(2);
  const auto thetas = ThetaSample::uniform(box, 4, 2);
  CHECK(riemannian_log_volume(FisherField::constant(SymMatrix::identity(2)), box,
                              kTwoPi * std::exp(2.0), thetas) == doctest::Approx(2.0).epsilon(1e-14));

  // Constant F: d/2 log(n/2pi) + 1/2 log det F + log V.
  const ParamDomain wide({0.0, -1.0}, {3.0, 1.0});
  const auto f = SymMatrix::from_row_major(2, std::vector{2.0, 0.5, 0.5, 1.0});
  const double n = 500.0;
  const double expected = std::log(n / kTwoPi) + 0.5 * std::log(1.75) + std::log(6.0);
  CHECK(riemannian_log_volume(FisherField::constant(f), wide, n,
                              ThetaSample::uniform(wide, 5, 9)) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("riemannian volume equals the asymptotic complexity") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> log_n(std::log(10.0), std::log(1e9));
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 6;
    const auto f = FisherField::constant(random_spd(d, rng));
    const auto box = ParamDomain::symmetric(d, 0.5 + 0.1 * (trial % 5));
    const auto thetas = ThetaSample::uniform(box, 8, trial);
    const double n = std::exp(log_n(rng));
    CHECK(std::abs(riemannian_log_volume(f, box, n, thetas) -
                   comp_asymptotic(f, box, n, thetas)) < 1e-12);
  }
  // A non-constant field on a weighted sample.
  const auto b = FisherField::closed_form(bernoulli());
  const auto domain = bernoulli_domain();
  const auto rule = graded_gauss_legendre(domain, 10);
  CHECK(std::abs(riemannian_log_volume(b, domain, 1e3, rule) -
                 comp_asymptotic(b, domain, 1e3, rule)) < 1e-12);
}

TEST_CASE("singular Fisher matrices are reported with the point index") {
  const auto f = FisherField::constant(SymMatrix::diagonal(std::vector{1.0, 0.0}));
  const auto box = ParamDomain::unit_cube(2);
  try {
    comp_asymptotic(f, box, 100.0, ThetaSample::uniform(box, 3, 1));
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
    CHECK(e.theta_index() == 0u);
  }
}

TEST_CASE("Bernoulli exact and asymptotic complexity converge") {
  const auto model = bernoulli();
  const auto field = FisherField::closed_form(model);
  const auto domain = bernoulli_domain();
  const auto rule = graded_gauss_legendre(domain);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t n : {100, 1000, 10000}) {
    const auto report = complexity_report(*model, field, domain, n, rule);
    REQUIRE(report.gap);
    CHECK(*report.gap == *report.exact - report.asymptotic);
    CHECK(*report.gap > 0.0);
    CHECK(std::abs(*report.gap) < previous);
    previous = std::abs(*report.gap);
  }
  CHECK(previous < 0.05);
}
