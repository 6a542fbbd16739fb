#include "effdim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "effdim/error.hpp"

namespace effdim::linalg {

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {
  require(dim >= 1, "matrix dimension must be at least 1");
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.a_[i * dim + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> values) {
  SymMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m.a_[i * m.dim_ + i] = values[i];
  return m;
}

SymMatrix SymMatrix::from_row_major(std::size_t dim, std::span<const double> row_major) {
  require(row_major.size() == dim * dim,
          "expected " + std::to_string(dim * dim) + " entries, got " +
              std::to_string(row_major.size()));
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double v = row_major[i * dim + j];
      require(v == row_major[j * dim + i],
              "matrix is not symmetric at (" + std::to_string(i) + ", " +
                  std::to_string(j) + ")");
      m.a_[i * dim + j] = v;
    }
  }
  return m;
}

void SymMatrix::add_outer(std::span<const double> v, double weight) {
  require(v.size() == dim_, "outer product vector has wrong length");
  for (std::size_t i = 0; i < dim_; ++i) {
    const double wi = weight * v[i];
    double* row = &a_[i * dim_];
    for (std::size_t j = i; j < dim_; ++j) row[j] += wi * v[j];
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) a_[j * dim_ + i] = a_[i * dim_ + j];
  }
}

SymMatrix SymMatrix::scaled(double factor) const {
  SymMatrix out = *this;
  out *= factor;
  return out;
}

SymMatrix& SymMatrix::operator*=(double factor) noexcept {
  for (double& v : a_) v *= factor;
  return *this;
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

bool SymMatrix::all_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
  }
  return std::sqrt(2.0 * s);
}

}  // namespace

Spectrum eigh(const SymMatrix& m, const JacobiOptions& options) {
  if (!m.all_finite()) fail(ErrorCode::InvalidInput, "matrix has non-finite entries");

  const std::size_t n = m.dim();
  std::vector<double> a(m.row_major().begin(), m.row_major().end());
  std::vector<double> v;
  if (options.want_eigenvectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }

  const double norm = m.frobenius_norm();
  const double threshold = options.relative_tolerance * norm;

  bool converged = false;
  for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a, n) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == options.max_sweeps) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];

        // Rotation angle that annihilates a(p, q).
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          const double new_kp = c * akp - s * akq;
          const double new_kq = s * akp + c * akq;
          a[k * n + p] = a[p * n + k] = new_kp;
          a[k * n + q] = a[q * n + k] = new_kq;
        }
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;

        if (!v.empty()) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v[k * n + p];
            const double vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (!converged) {
    fail(ErrorCode::ConvergenceFailure,
         "Jacobi eigensolver did not converge in " + std::to_string(options.max_sweeps) +
             " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i] > a[j * n + j];
  });

  Spectrum out;
  out.eigenvalues.resize(n);
  const double clamp = options.relative_tolerance * norm;
  for (std::size_t k = 0; k < n; ++k) {
    double lambda = a[order[k] * n + order[k]];
    if (lambda < 0.0 && lambda >= -clamp) lambda = 0.0;
    out.eigenvalues[k] = lambda;
  }
  if (!v.empty()) {
    out.eigenvectors.resize(n * n);
    for (std::size_t row = 0; row < n; ++row) {
      for (std::size_t k = 0; k < n; ++k) out.eigenvectors[row * n + k] = v[row * n + order[k]];
    }
  }
  return out;
}

double log_det_shift(std::span<const double> eigenvalues, double c) {
  require(c >= 0.0 && std::isfinite(c), "shift factor must be finite and nonnegative");
  if (c == 0.0) return 0.0;
  double sum = 0.0;
  for (double lambda : eigenvalues) {
    const double x = c * lambda;
    if (!(1.0 + x > 0.0)) {
      fail(ErrorCode::NotPositiveDefinite,
           "Id + c*F has nonpositive eigenvalue 1 + " + std::to_string(x));
    }
    sum += std::log1p(x);
  }
  return sum;
}

double log_det_shift(const SymMatrix& m, double c) {
  require(c >= 0.0 && std::isfinite(c), "shift factor must be finite and nonnegative");
  if (c == 0.0) return 0.0;
  const Spectrum spectrum = eigh(m, {.want_eigenvectors = false});
  return log_det_shift(spectrum.eigenvalues, c);
}

double trace(const SymMatrix& m) noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

SymMatrix reconstruct(const Spectrum& spectrum) {
  require(spectrum.has_eigenvectors(), "spectrum has no eigenvectors");
  const std::size_t n = spectrum.dim();
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += spectrum.eigenvector(i, k) * spectrum.eigenvalues[k] * spectrum.eigenvector(j, k);
      }
      out.set(i, j, s);
    }
  }
  return out;
}

}  // namespace effdim::linalg
