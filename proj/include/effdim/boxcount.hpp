#ifndef EFFDIM_BOXCOUNT_HPP
#define EFFDIM_BOXCOUNT_HPP

#include <cstddef>
#include <cstdint>
#include <span>

#include "effdim/linalg.hpp"
#include "effdim/models.hpp"

namespace effdim::boxcount {

// Number of boxes in a covering. `count` is exact up to 2^63 - 1; past that
// `saturated` is set, `count` holds 2^63 - 1 and only `log_count` is exact.
struct CoverCount {
  std::uint64_t count = 1;
  bool saturated = false;
  double log_count = 0.0;
  double scale = 1.0;
  std::size_t d = 0;
};

// prod_i ceil(c * s_i), the number of boxes [0, 1/s_1] x ... x [0, 1/s_d]
// covering [0, c]^d. A zero s_i contributes one box.
CoverCount cube_count_constant(std::span<const double> s, double c);

// log sqrt(det(Id + c^2 diag(s^2))), the smooth surrogate for log of the
// cube count above.
double log_determinant_surrogate(std::span<const double> s, double c);

// Literal count of lattice cells covering the dilated box c * domain under a
// constant metric, for d <= 3. Cells have unit side in the metric and are
// aligned with its eigenvectors; the lattice is anchored at the image of the
// domain's lower corner. A cell counts when its interior meets the box.
CoverCount lattice_box_count(const ParamDomain& domain, const linalg::SymMatrix& metric,
                             double c);

struct BoxCountSample {
  double epsilon;
  double count;
};

// Least-squares slope of log N against |log epsilon|.
double boxdim_estimate(std::span<const BoxCountSample> counts);

}  // namespace effdim::boxcount

#endif  // EFFDIM_BOXCOUNT_HPP
