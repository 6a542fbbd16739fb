#ifndef EFFDIM_LINALG_HPP
#define EFFDIM_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace effdim::linalg {

// Dense symmetric matrix, stored in full row-major form. Every mutator
// writes both (i, j) and (j, i), so entries are exactly symmetric.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dim);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(std::span<const double> values);
  // Throws InvalidInput unless row_major is dim*dim and exactly symmetric.
  static SymMatrix from_row_major(std::size_t dim, std::span<const double> row_major);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double value) noexcept {
    a_[i * dim_ + j] = value;
    a_[j * dim_ + i] = value;
  }

  // this += weight * v v^T
  void add_outer(std::span<const double> v, double weight = 1.0);
  SymMatrix scaled(double factor) const;
  SymMatrix& operator*=(double factor) noexcept;

  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;
  bool all_finite() const noexcept;

  std::span<const double> row_major() const noexcept { return a_; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<double> a_;
};

// Eigenvalues sorted descending. When present, eigenvectors are stored
// column-wise in a dim x dim row-major array: column k pairs with
// eigenvalues[k].
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  bool has_eigenvectors() const noexcept { return !eigenvectors.empty(); }
  double eigenvector(std::size_t row, std::size_t k) const noexcept {
    return eigenvectors[row * dim() + k];
  }
};

struct JacobiOptions {
  double relative_tolerance = 1e-12;
  int max_sweeps = 100;
  bool want_eigenvectors = true;
};

// Cyclic Jacobi eigendecomposition. Eigenvalues within
// relative_tolerance * ||m||_F below zero are clamped to zero; larger
// negative eigenvalues are returned as is. Throws InvalidInput for
// non-finite entries and ConvergenceFailure past max_sweeps.
Spectrum eigh(const SymMatrix& m, const JacobiOptions& options = {});

// log det(Id + c m) as sum_i log(1 + c lambda_i). Throws NotPositiveDefinite
// if some 1 + c lambda_i <= 0.
double log_det_shift(const SymMatrix& m, double c);
double log_det_shift(std::span<const double> eigenvalues, double c);

double trace(const SymMatrix& m) noexcept;

// V diag(lambda) V^T; requires eigenvectors.
SymMatrix reconstruct(const Spectrum& spectrum);

}  // namespace effdim::linalg

#endif  // EFFDIM_LINALG_HPP
