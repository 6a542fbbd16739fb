#include <cmath>

#include "doctest.h"
#include "effdim/error.hpp"
#include "effdim/fisher.hpp"

using namespace effdim;
using linalg::SymMatrix;

namespace {

double relative_frobenius(const SymMatrix& a, const SymMatrix& b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) num += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
  }
  return std::sqrt(num) / b.frobenius_norm();
}

// RMS relative error of the Monte Carlo Fisher over many generator streams.
double rms_error(const ModelPtr& model, std::span<const double> theta, std::size_t n) {
  const auto mc = FisherField::monte_carlo(model, n, 1234);
  const auto exact = *model->closed_form_fisher(theta);
  double sum = 0.0;
  const int replicates = 60;
  for (int k = 0; k < replicates; ++k) {
    const double e = relative_frobenius(mc.evaluate(theta, k), exact);
    sum += e * e;
  }
  return std::sqrt(sum / replicates);
}

}  // namespace

TEST_CASE("eval_fisher examples") {
  const auto diag = SymMatrix::diagonal(std::vector{2.0, 6.0});
  CHECK(eval_fisher(FisherField::constant(diag), std::vector{0.3, -9.0}) == diag);

  const auto g = FisherField::closed_form(gaussian_fixed_variance(2, 1.0));
  CHECK(eval_fisher(g, std::vector{0.0, 0.0}) == SymMatrix::identity(2));

  const auto mc = FisherField::monte_carlo(gaussian_fixed_variance(1, 1.0), 100000, 42);
  CHECK(std::abs(eval_fisher(mc, std::vector{0.4})(0, 0) - 1.0) < 0.02);
}

TEST_CASE("mean_trace examples") {
  const auto diag = FisherField::constant(SymMatrix::diagonal(std::vector{2.0, 6.0}));
  const auto box = ParamDomain::symmetric(2, 1.0);
  CHECK(mean_trace(diag, box, ThetaSample::uniform(box, 17, 3)) == doctest::Approx(8.0));

  const auto b = FisherField::closed_form(bernoulli());
  const auto dom = bernoulli_domain();
  CHECK(mean_trace(b, dom, ThetaSample(1, {0.5})) == 4.0);
  CHECK(mean_trace(b, dom, ThetaSample(1, {0.2, 0.5, 0.8})) == doctest::Approx(5.5).epsilon(1e-15));
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(FisherField::monte_carlo(bernoulli(), 0, 1), Error);
  CHECK_THROWS_AS(ThetaSample(1, {}), Error);

  const auto b = FisherField::closed_form(bernoulli());
  CHECK_THROWS_AS(mean_trace(b, bernoulli_domain(), ThetaSample(1, {1.5})), Error);

  const auto mlp = FisherField::closed_form(mlp_gaussian({1, 1}));
  try {
    mlp.evaluate(std::vector{0.0, 0.0});
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }

  // Model failures carry the theta index.
  try {
    evaluate_base_at(b, ThetaSample(1, {0.5, 0.0, 0.7}));
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
    CHECK(e.theta_index() == 1u);
  }
}

TEST_CASE("gain scales every evaluation") {
  const auto f = FisherField::constant(SymMatrix::diagonal(std::vector{1.0, 3.0})).scaled(4.0);
  CHECK(f.gain() == 4.0);
  CHECK(f.evaluate(std::vector{0.0, 0.0}) == SymMatrix::diagonal(std::vector{4.0, 12.0}));
  CHECK(f.evaluate_base(std::vector{0.0, 0.0}) == SymMatrix::diagonal(std::vector{1.0, 3.0}));
  CHECK_THROWS_AS(f.scaled(0.0), Error);
}

TEST_CASE("Monte Carlo Fisher is PSD") {
  const auto model = mlp_gaussian({3, 4, 1});
  const auto field = FisherField::monte_carlo(model, 50, 8);
  const auto domain = ParamDomain::symmetric(model->param_dim(), 1.0);
  const auto thetas = ThetaSample::uniform(domain, 20, 8);
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const auto f = field.evaluate(thetas.point(k), k);
    // No clamping: the raw smallest eigenvalue.
    const auto s = linalg::eigh(f, {.relative_tolerance = 1e-14, .want_eigenvectors = false});
    CHECK(s.eigenvalues.back() >= -1e-12 * linalg::trace(f));
  }
}

TEST_CASE("Monte Carlo Fisher error halves when N quadruples") {
  const std::vector<double> g_theta{0.2, -0.5};
  const std::vector<double> b_theta{0.3};
  for (const auto& [model, theta] :
       {std::pair{gaussian_fixed_variance(2, 1.5), std::span<const double>(g_theta)},
        std::pair{bernoulli(), std::span<const double>(b_theta)}}) {
    const double e1 = rms_error(model, theta, 1000);
    const double e2 = rms_error(model, theta, 4000);
    const double e3 = rms_error(model, theta, 16000);
    CHECK_MESSAGE(e1 / e2 == doctest::Approx(2.0).epsilon(0.3), model->name());
    CHECK_MESSAGE(e2 / e3 == doctest::Approx(2.0).epsilon(0.3), model->name());
    CHECK(e3 < 5.0 / std::sqrt(16000.0));
  }
}

TEST_CASE("score form agrees with the negative Hessian form on Bernoulli") {
  const auto model = bernoulli();
  const auto support = *model->finite_support();
  for (double p : {0.05, 0.3, 0.5, 0.9}) {
    const double h = 1e-4;
    double hessian_form = 0.0;
    for (const auto& x : support) {
      const double prob = std::exp(model->log_density(x, std::vector{p}));
      const double second = (model->log_density(x, std::vector{p + h}) -
                             2.0 * model->log_density(x, std::vector{p}) +
                             model->log_density(x, std::vector{p - h})) /
                            (h * h);
      hessian_form -= prob * second;
    }
    double score_form = 0.0;
    for (const auto& x : support) {
      const double prob = std::exp(model->log_density(x, std::vector{p}));
      const double s = model->score(x, std::vector{p})[0];
      score_form += prob * s * s;
    }
    const double exact = 1.0 / (p * (1.0 - p));
    CHECK(score_form == doctest::Approx(exact).epsilon(1e-12));
    CHECK(hessian_form == doctest::Approx(exact).epsilon(1e-5));
  }
}

TEST_CASE("Monte Carlo evaluations are order and thread independent") {
  const auto model = mlp_gaussian({2, 3, 1});
  const auto field = FisherField::monte_carlo(model, 200, 77);
  const auto domain = ParamDomain::symmetric(model->param_dim(), 1.0);
  const auto thetas = ThetaSample::uniform(domain, 16, 77);

  const auto serial = evaluate_base_at(field, thetas, 1);
  const auto threaded = evaluate_base_at(field, thetas, 4);
  CHECK(serial == threaded);
  for (std::size_t k = thetas.size(); k-- > 0;) {
    CHECK(field.evaluate_base(thetas.point(k), k) == serial[k]);
  }
}

TEST_CASE("uniform theta samples are reproducible and inside the domain") {
  const ParamDomain box({-1.0, 2.0, 0.0}, {1.0, 5.0, 0.1});
  const auto a = ThetaSample::uniform(box, 100, 9);
  const auto b = ThetaSample::uniform(box, 100, 9);
  const auto c = ThetaSample::uniform(box, 100, 10);
  CHECK_NOTHROW(a.check_inside(box));
  bool same = true, differ = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      same = same && a.point(k)[i] == b.point(k)[i];
      differ = differ || a.point(k)[i] != c.point(k)[i];
    }
  }
  CHECK(same);
  CHECK(differ);
}
