#include "effdim/boxcount.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "effdim/error.hpp"

namespace effdim::boxcount {

namespace {

constexpr std::uint64_t kMaxExact = std::numeric_limits<std::int64_t>::max();

struct CountBuilder {
  std::uint64_t count = 1;
  bool saturated = false;
  double log_count = 0.0;

  void multiply(double factor) {
    log_count += std::log(factor);
    if (saturated) return;
    if (factor > static_cast<double>(kMaxExact)) {
      saturated = true;
      return;
    }
    const auto f = static_cast<std::uint64_t>(factor);
    std::uint64_t product = 0;
    if (__builtin_mul_overflow(count, f, &product) || product > kMaxExact) {
      saturated = true;
      return;
    }
    count = product;
  }

  CoverCount finish(double scale, std::size_t d) const {
    return CoverCount{saturated ? kMaxExact : count, saturated, log_count, scale, d};
  }
};

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

// Convex hull (counter-clockwise) of 2-d points, Andrew's monotone chain.
std::vector<Vec3> hull_2d(std::vector<Vec3> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec3& a, const Vec3& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  auto turn = [](const Vec3& o, const Vec3& a, const Vec3& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Vec3> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k > 1 ? k - 1 : k);
  return h;
}

}  // namespace

CoverCount cube_count_constant(std::span<const double> s, double c) {
  require(c > 0.0 && std::isfinite(c), "cube count scale must be positive");
  CountBuilder b;
  for (double si : s) {
    require(si >= 0.0 && std::isfinite(si), "cube extents must be finite and nonnegative");
    b.multiply(std::max(1.0, std::ceil(c * si)));
  }
  return b.finish(c, s.size());
}

double log_determinant_surrogate(std::span<const double> s, double c) {
  double sum = 0.0;
  for (double si : s) sum += std::log1p((c * si) * (c * si));
  return 0.5 * sum;
}

CoverCount lattice_box_count(const ParamDomain& domain, const linalg::SymMatrix& metric,
                             double c) {
  const std::size_t d = domain.dim();
  if (d > 3) fail(ErrorCode::Unsupported, "lattice box count supports d <= 3");
  require(metric.dim() == d, "metric and domain differ in dimension");
  require(c > 0.0 && std::isfinite(c), "lattice scale must be positive");

  const auto spectrum = linalg::eigh(metric);
  for (double lambda : spectrum.eigenvalues) {
    require(lambda >= 0.0, "lattice metric must be positive semidefinite");
  }

  // Rows of the map x -> z for the directions with positive extent.
  std::vector<Vec3> rows;
  for (std::size_t k = 0; k < d; ++k) {
    const double s = std::sqrt(spectrum.eigenvalues[k]);
    if (s == 0.0) continue;
    Vec3 row{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < d; ++i) row[i] = s * spectrum.eigenvector(i, k);
    rows.push_back(row);
  }
  const std::size_t r = rows.size();
  if (r == 0) return CountBuilder{}.finish(c, d);

  // Vertices of the dilated box, relative to its lower corner, in z coordinates.
  std::vector<Vec3> vertices;
  for (std::size_t bits = 0; bits < (std::size_t{1} << d); ++bits) {
    Vec3 x{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < d; ++i) {
      if (bits & (std::size_t{1} << i)) x[i] = c * (domain.upper()[i] - domain.lower()[i]);
    }
    Vec3 z{0.0, 0.0, 0.0};
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t i = 0; i < d; ++i) z[a] += rows[a][i] * x[i];
    }
    vertices.push_back(z);
  }

  // Candidate separating axes in z space.
  std::vector<Vec3> axes;
  for (std::size_t a = 0; a < r; ++a) {
    Vec3 e{0.0, 0.0, 0.0};
    e[a] = 1.0;
    axes.push_back(e);
  }
  if (r == 2) {
    const auto hull = hull_2d(vertices);
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto& p = hull[i];
      const auto& q = hull[(i + 1) % hull.size()];
      axes.push_back({-(q[1] - p[1]), q[0] - p[0], 0.0});
    }
  } else if (r == 3) {
    std::array<Vec3, 3> edges;
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t a = 0; a < 3; ++a) edges[j][a] = rows[a][j];
    }
    for (std::size_t j = 0; j < 3; ++j) {
      axes.push_back(cross(edges[j], edges[(j + 1) % 3]));
      for (std::size_t a = 0; a < 3; ++a) {
        Vec3 e{0.0, 0.0, 0.0};
        e[a] = 1.0;
        axes.push_back(cross(e, edges[j]));
      }
    }
  }
  axes.erase(std::remove_if(axes.begin(), axes.end(),
                            [](const Vec3& u) { return norm(u) < 1e-300; }),
             axes.end());

  struct Interval {
    double lo, hi;
  };
  std::vector<Interval> shadow;
  for (const auto& u : axes) {
    Interval iv{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& v : vertices) {
      const double p = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
      iv.lo = std::min(iv.lo, p);
      iv.hi = std::max(iv.hi, p);
    }
    shadow.push_back(iv);
  }

  std::array<long long, 3> first{0, 0, 0};
  std::array<long long, 3> last{0, 0, 0};
  double cells = 1.0;
  for (std::size_t a = 0; a < r; ++a) {
    first[a] = static_cast<long long>(std::floor(shadow[a].lo));
    last[a] = static_cast<long long>(std::ceil(shadow[a].hi)) - 1;
    last[a] = std::max(last[a], first[a]);
    cells *= static_cast<double>(last[a] - first[a] + 1);
  }
  if (cells > 5e7) fail(ErrorCode::Unsupported, "lattice box count would visit too many cells");

  std::uint64_t count = 0;
  std::array<long long, 3> k = first;
  while (true) {
    bool meets = true;
    for (std::size_t i = 0; i < axes.size() && meets; ++i) {
      const auto& u = axes[i];
      double lo = 0.0, hi = 0.0;
      for (std::size_t a = 0; a < r; ++a) {
        const double base = u[a] * static_cast<double>(k[a]);
        lo += base + std::min(u[a], 0.0);
        hi += base + std::max(u[a], 0.0);
      }
      meets = std::min(hi, shadow[i].hi) - std::max(lo, shadow[i].lo) > 0.0;
    }
    if (meets) ++count;

    std::size_t a = 0;
    while (a < r && ++k[a] > last[a]) {
      k[a] = first[a];
      ++a;
    }
    if (a == r) break;
  }
  return CoverCount{count, false, std::log(static_cast<double>(count)), c, d};
}

double boxdim_estimate(std::span<const BoxCountSample> counts) {
  require(counts.size() >= 2, "box dimension needs at least two scales");
  double mx = 0.0, my = 0.0;
  for (const auto& s : counts) {
    require(s.epsilon > 0.0 && s.epsilon < 1.0, "box sizes must lie in (0, 1)");
    require(s.count >= 1.0, "box counts must be >= 1");
    mx += -std::log(s.epsilon);
    my += std::log(s.count);
  }
  const double m = static_cast<double>(counts.size());
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : counts) {
    const double x = -std::log(s.epsilon) - mx;
    sxx += x * x;
    sxy += x * (std::log(s.count) - my);
  }
  require(sxx > 0.0, "box dimension needs at least two distinct scales");
  return sxy / sxx;
}

}  // namespace effdim::boxcount
