#include <cmath>
#include <random>

#include "doctest.h"
#include "effdim/error.hpp"
#include "effdim/linalg.hpp"

using namespace effdim;
using namespace effdim::linalg;

namespace {

// Determinant by Gaussian elimination with partial pivoting; independent of
// the spectral route.
double brute_force_det(std::vector<double> a, std::size_t n) {
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
      det = -det;
    }
    det *= a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (std::size_t k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
    }
  }
  return det;
}

SymMatrix random_symmetric(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  SymMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) m.set(i, j, normal(rng));
  }
  return m;
}

SymMatrix random_psd(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  SymMatrix m(d);
  const std::size_t rank = 1 + rng() % d;
  for (std::size_t r = 0; r < rank; ++r) {
    std::vector<double> v(d);
    for (double& x : v) x = normal(rng);
    m.add_outer(v);
  }
  return m;
}

}  // namespace

TEST_CASE("eigh examples") {
  CHECK(eigh(SymMatrix::diagonal(std::vector{3.0, 1.0})).eigenvalues == std::vector{3.0, 1.0});
  CHECK(eigh(SymMatrix::diagonal(std::vector{1.0, 3.0})).eigenvalues == std::vector{3.0, 1.0});
  CHECK(eigh(SymMatrix::identity(4)).eigenvalues == std::vector{1.0, 1.0, 1.0, 1.0});

  const auto s = eigh(SymMatrix::from_row_major(2, std::vector{2.0, 1.0, 1.0, 2.0}));
  CHECK(s.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigh is deterministic") {
  std::mt19937_64 rng(3);
  const auto m = random_symmetric(12, rng);
  const auto a = eigh(m);
  const auto b = eigh(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("eigh reconstructs random symmetric matrices up to d = 64") {
  std::mt19937_64 rng(11);
  for (std::size_t d : {1, 2, 3, 5, 8, 17, 32, 64}) {
    const auto m = random_symmetric(d, rng);
    const auto spectrum = eigh(m);
    CHECK(std::is_sorted(spectrum.eigenvalues.rbegin(), spectrum.eigenvalues.rend()));
    const auto back = reconstruct(spectrum);
    const double tol = 1e-10 * std::max(1.0, m.max_abs());
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) worst = std::max(worst, std::abs(back(i, j) - m(i, j)));
    }
    CHECK_MESSAGE(worst <= tol, "d = " << d);

    // V^T V = Id
    double ortho = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < d; ++i) dot += spectrum.eigenvector(i, a) * spectrum.eigenvector(i, b);
        ortho = std::max(ortho, std::abs(dot - (a == b ? 1.0 : 0.0)));
      }
    }
    CHECK(ortho < 1e-12);
  }
}

TEST_CASE("trace equals the eigenvalue sum") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_symmetric(1 + trial % 20, rng);
    double sum = 0.0;
    for (double l : eigh(m).eigenvalues) sum += l;
    CHECK(std::abs(trace(m) - sum) <= 1e-10 * std::max(1.0, std::abs(trace(m))));
  }
}

TEST_CASE("trace examples") {
  CHECK(trace(SymMatrix::identity(5)) == 5.0);
  CHECK(trace(SymMatrix::diagonal(std::vector{2.0, 6.0})) == 8.0);
  CHECK(trace(SymMatrix::from_row_major(2, std::vector{1.0, 9.0, 9.0, 1.0})) == 2.0);
}

TEST_CASE("log_det_shift examples") {
  CHECK(log_det_shift(SymMatrix::identity(3), 1.0) == doctest::Approx(3.0 * std::log(2.0)));
  CHECK(log_det_shift(SymMatrix::from_row_major(2, std::vector{5.0, 1.0, 1.0, -3.0}), 0.0) == 0.0);
  CHECK(log_det_shift(SymMatrix::diagonal(std::vector{4.0, 0.0}), 2.0) ==
        doctest::Approx(std::log(9.0)));
}

TEST_CASE("log_det_shift matches a brute-force determinant") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> log_c(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 8;
    const auto m = random_psd(d, rng);
    const double c = std::pow(10.0, log_c(rng));
    std::vector<double> shifted(m.row_major().begin(), m.row_major().end());
    for (auto& v : shifted) v *= c;
    for (std::size_t i = 0; i < d; ++i) shifted[i * d + i] += 1.0;
    const double expected = std::log(brute_force_det(shifted, d));
    const double got = log_det_shift(m, c);
    CHECK(std::abs(got - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("log_det_shift is nondecreasing in c for PSD input") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_psd(1 + trial % 6, rng);
    double previous = log_det_shift(m, 0.0);
    for (double c = 1e-3; c <= 1e4; c *= 3.0) {
      const double v = log_det_shift(m, c);
      CHECK(v >= previous);
      previous = v;
    }
  }
}

TEST_CASE("small negative eigenvalues are clamped, large ones are not") {
  // Q diag(2, -delta) Q^T with a 45 degree rotation.
  auto rotated = [](double a, double b) {
    const double h = 0.5;
    return SymMatrix::from_row_major(
        2, std::vector{h * (a + b), h * (a - b), h * (a - b), h * (a + b)});
  };
  const auto tiny = eigh(rotated(2.0, -1e-15));
  CHECK(tiny.eigenvalues[1] == 0.0);

  const auto large = eigh(rotated(2.0, -1e-3));
  CHECK(large.eigenvalues[1] == doctest::Approx(-1e-3).epsilon(1e-9));
  try {
    log_det_shift(rotated(2.0, -1e-3), 2000.0);
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
}

TEST_CASE("error paths") {
  SymMatrix bad(2);
  bad.set(0, 1, std::nan(""));
  try {
    eigh(bad);
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }

  const auto m = SymMatrix::from_row_major(2, std::vector{1.0, 0.5, 0.5, 1.0});
  try {
    eigh(m, {.max_sweeps = 0});
    FAIL("expected ConvergenceFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConvergenceFailure);
  }

  CHECK_THROWS_AS(SymMatrix::from_row_major(2, std::vector{1.0, 2.0, 3.0, 1.0}), Error);
  CHECK_THROWS_AS(SymMatrix(0), Error);
  CHECK_THROWS_AS(log_det_shift(m, -1.0), Error);
}
