#pragma once

// Median-radius depth and the comparison depths: Mahalanobis (classical and
// a trimmed robust stand-in), spatial, halfspace, simplicial and projection.
// Each depth has a free function for one-off queries and an evaluator class
// that caches the data-only part for repeated queries.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mrdepth/dataset.hpp"
#include "mrdepth/error.hpp"
#include "mrdepth/geometry.hpp"
#include "mrdepth/radial_core.hpp"
#include "mrdepth/random.hpp"

namespace mrdepth {

// Ratio excess tolerated (and clamped) when the center is a numerical
// minimizer of G.
inline constexpr double kCenterSlack = 1e-9;
// Covariances whose condition number exceeds this are treated as singular.
inline constexpr double kMaxCondition = 1e12;

// ---------------------------------------------------------------- mrd

class MrdDepth {
 public:
  MrdDepth(const DataSet& data, const CenterEstimate& center) : data_(&data) {
    data.require_dim(center.location);
    scale_ = central_scale(data, center);
    if (!(scale_ > 0.0)) throw Error(ErrorKind::DegenerateScale, "median radius at the center is zero");
  }

  double scale() const noexcept { return scale_; }

  double operator()(const Vector& v) const {
    const double g = g_multivariate(*data_, v);
    const double ratio = scale_ / g;  // g == 0 gives +inf and is rejected below
    if (ratio > 1.0 + kCenterSlack) {
      throw Error(ErrorKind::CenterNotMinimal, "G(v) = " + std::to_string(g) +
                                                   " is below the central scale " + std::to_string(scale_));
    }
    return std::min(ratio, 1.0);
  }

 private:
  const DataSet* data_;
  double scale_ = 0.0;
};

// G(center) / G(v).
inline double mrd_depth(const DataSet& data, const Vector& v, const CenterEstimate& center) {
  return MrdDepth(data, center)(v);
}

// ------------------------------------------------------- mahalanobis

namespace detail {

struct Scatter {
  Vector mean;
  Eigen::MatrixXd cov;
};

inline Scatter mean_and_covariance(const RowMatrix& x) {
  const auto n = x.rows();
  Scatter s;
  s.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - s.mean.transpose();
  s.cov = n > 1 ? Eigen::MatrixXd((centered.transpose() * centered) / static_cast<double>(n - 1))
                : Eigen::MatrixXd::Zero(x.cols(), x.cols());
  return s;
}

// Inverse of a covariance that passes the rank and condition checks.
inline Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& cov, std::string_view what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw Error(ErrorKind::SingularCovariance, std::string(what) + ": eigen solve failed");
  const auto& ev = eig.eigenvalues();
  const double lmax = ev.maxCoeff();
  const double lmin = ev.minCoeff();
  if (!(lmax > 0.0) || !(lmin > 0.0) || lmax / lmin > kMaxCondition) {
    throw Error(ErrorKind::SingularCovariance,
                std::string(what) + " is singular (eigenvalues in [" + std::to_string(lmin) + ", " +
                    std::to_string(lmax) + "])");
  }
  return eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace detail

class MahalanobisDepth {
 public:
  explicit MahalanobisDepth(const DataSet& data) {
    if (data.n() <= data.d()) {
      throw Error(ErrorKind::SingularCovariance,
                  "sample covariance has rank < d (n = " + std::to_string(data.n()) +
                      ", d = " + std::to_string(data.d()) + ")");
    }
    auto s = detail::mean_and_covariance(data.matrix());
    mean_ = std::move(s.mean);
    precision_ = detail::checked_inverse(s.cov, "sample covariance");
  }

  const Vector& mean() const noexcept { return mean_; }

  double squared_distance(const Vector& v) const {
    if (v.size() != mean_.size()) throw Error(ErrorKind::DimensionMismatch, "query dimension differs from data");
    const Vector diff = v - mean_;
    return std::max(0.0, diff.dot(precision_ * diff));
  }

  double operator()(const Vector& v) const { return 1.0 / (1.0 + squared_distance(v)); }

 private:
  Vector mean_;
  Eigen::MatrixXd precision_;
};

inline double mahalanobis_depth(const DataSet& data, const Vector& v) { return MahalanobisDepth(data)(v); }

// One-step trimmed scatter: rank rows by their coordinatewise
// median/MAD-standardized squared norm, keep the ceil((1 - trim) n) closest
// and take their mean and covariance. A stand-in for MCD-type estimators.
class RobustMahalanobis {
 public:
  RobustMahalanobis(const DataSet& data, double trim) {
    if (!(trim > 0.0 && trim <= 0.5)) throw Error(ErrorKind::InvalidArgument, "trim must lie in (0, 0.5]");
    const std::size_t n = data.n();
    const std::size_t d = data.d();
    const auto keep = static_cast<std::size_t>(std::ceil((1.0 - trim) * static_cast<double>(n) - 1e-9));
    if (d >= keep) {
      throw Error(ErrorKind::SingularCovariance,
                  "trimmed subset of " + std::to_string(keep) + " rows cannot support d = " + std::to_string(d));
    }

    Vector med(static_cast<Eigen::Index>(d));
    Vector mad(static_cast<Eigen::Index>(d));
    std::vector<double> column(n);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        column[i] = data.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
      const Sample1D s(column);
      const double m = median_univariate(s);
      const double spread = g_univariate(s, m);
      if (!(spread > 0.0)) {
        throw Error(ErrorKind::SingularCovariance, "coordinate " + std::to_string(j) + " has zero MAD");
      }
      med(static_cast<Eigen::Index>(j)) = m;
      mad(static_cast<Eigen::Index>(j)) = spread;
    }

    std::vector<std::pair<double, std::size_t>> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Vector z = (data.row(i).transpose() - med).cwiseQuotient(mad);
      rank[i] = {z.squaredNorm(), i};
    }
    std::sort(rank.begin(), rank.end());

    retained_.resize(keep);
    RowMatrix subset(static_cast<Eigen::Index>(keep), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < keep; ++r) {
      retained_[r] = rank[r].second;
      subset.row(static_cast<Eigen::Index>(r)) = data.row(rank[r].second);
    }
    std::sort(retained_.begin(), retained_.end());

    auto s = detail::mean_and_covariance(subset);
    location_ = std::move(s.mean);
    precision_ = detail::checked_inverse(s.cov, "trimmed covariance");
  }

  const Vector& location() const noexcept { return location_; }
  // Row indices kept by the trimming step, ascending.
  const std::vector<std::size_t>& retained() const noexcept { return retained_; }

  double distance(const Vector& v) const {
    if (v.size() != location_.size()) throw Error(ErrorKind::DimensionMismatch, "query dimension differs from data");
    const Vector diff = v - location_;
    return std::sqrt(std::max(0.0, diff.dot(precision_ * diff)));
  }

  // 1 / (1 + D^2), the Mahalanobis-depth transform of the robust distance.
  double depth(const Vector& v) const {
    const double dist = distance(v);
    return 1.0 / (1.0 + dist * dist);
  }

 private:
  Vector location_;
  Eigen::MatrixXd precision_;
  std::vector<std::size_t> retained_;
};

inline double robust_mahalanobis_distance(const DataSet& data, const Vector& v, double trim = 0.25) {
  return RobustMahalanobis(data, trim).distance(v);
}

// ------------------------------------------------------------ spatial

// 1 - || mean of unit vectors (x_i - v)/||x_i - v|| ||, averaging over rows
// distinct from v only. All rows equal to v gives depth 1.
inline double spatial_depth(const DataSet& data, const Vector& v) {
  data.require_dim(v);
  Vector sum = Vector::Zero(v.size());
  std::size_t used = 0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    const Vector diff = data.row(i).transpose() - v;
    const double norm = diff.norm();
    if (norm == 0.0) continue;
    sum += diff / norm;
    ++used;
  }
  if (used == 0) return 1.0;
  return std::clamp(1.0 - sum.norm() / static_cast<double>(used), 0.0, 1.0);
}

// ------------------------------------------------------ planar depths

namespace detail {

inline void require_planar(const DataSet& data, std::string_view what) {
  if (data.d() != 2) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " requires d = 2, got d = " + std::to_string(data.d()));
  }
}

// Angles of x_i - v for rows not equal to v, sorted; also returns how many
// rows coincide with v.
inline std::pair<std::vector<double>, std::size_t> sorted_angles(const DataSet& data, const Vector& v) {
  std::vector<double> angles;
  angles.reserve(data.n());
  std::size_t coincident = 0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    const double dx = data.matrix()(static_cast<Eigen::Index>(i), 0) - v(0);
    const double dy = data.matrix()(static_cast<Eigen::Index>(i), 1) - v(1);
    if (dx == 0.0 && dy == 0.0) {
      ++coincident;
    } else {
      angles.push_back(std::atan2(dy, dx));
    }
  }
  std::sort(angles.begin(), angles.end());
  return {std::move(angles), coincident};
}

inline double orient(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

}  // namespace detail

// Exact halfspace depth in the plane: min over closed halfplanes with v on
// the boundary of the fraction of rows inside. Equivalent to n minus the
// largest number of rows in an open halfplane through v; that maximum is
// attained by an arc (theta_i, theta_i + pi] or (theta_i - pi, theta_i] of
// the sorted angles. Rows equal to v lie in every halfplane.
inline double tukey_depth_2d(const DataSet& data, const Vector& v) {
  detail::require_planar(data, "tukey_depth_2d");
  data.require_dim(v);
  auto [angles, coincident] = detail::sorted_angles(data, v);
  const std::size_t m = angles.size();
  if (m == 0) return 1.0;

  constexpr double pi = std::numbers::pi;
  std::vector<double> ext;
  ext.reserve(3 * m);
  for (double a : angles) ext.push_back(a - 2.0 * pi);
  for (double a : angles) ext.push_back(a);
  for (double a : angles) ext.push_back(a + 2.0 * pi);
  auto count_in = [&](double lo, double hi) {  // (lo, hi]
    return static_cast<std::size_t>(std::upper_bound(ext.begin(), ext.end(), hi) -
                                    std::upper_bound(ext.begin(), ext.end(), lo));
  };

  std::size_t max_open = 0;
  for (double a : angles) {
    max_open = std::max(max_open, count_in(a, a + pi));
    max_open = std::max(max_open, count_in(a - pi, a));
  }
  max_open = std::min(max_open, m);
  return static_cast<double>(data.n() - max_open) / static_cast<double>(data.n());
}

inline double binomial3(std::size_t n) {
  if (n < 3) return 0.0;
  const double x = static_cast<double>(n);
  return x * (x - 1.0) * (x - 2.0) / 6.0;
}

// Closed-triangle containment via the three edge orientations. Collinear
// triples degenerate to their segment.
inline bool triangle_contains(const Vector& a, const Vector& b, const Vector& c, const Vector& v) {
  const double o1 = detail::orient(a(0), a(1), b(0), b(1), v(0), v(1));
  const double o2 = detail::orient(b(0), b(1), c(0), c(1), v(0), v(1));
  const double o3 = detail::orient(c(0), c(1), a(0), a(1), v(0), v(1));
  if (o1 == 0.0 && o2 == 0.0 && o3 == 0.0) {
    return v(0) >= std::min({a(0), b(0), c(0)}) && v(0) <= std::max({a(0), b(0), c(0)}) &&
           v(1) >= std::min({a(1), b(1), c(1)}) && v(1) <= std::max({a(1), b(1), c(1)});
  }
  const bool nonneg = o1 >= 0.0 && o2 >= 0.0 && o3 >= 0.0;
  const bool nonpos = o1 <= 0.0 && o2 <= 0.0 && o3 <= 0.0;
  return nonneg || nonpos;
}

// Direct enumeration of all C(n,3) triangles.
inline double simplicial_depth_2d_enumerate(const DataSet& data, const Vector& v) {
  detail::require_planar(data, "simplicial_depth_2d");
  data.require_dim(v);
  const std::size_t n = data.n();
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "simplicial depth needs n >= 3");
  std::vector<Vector> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(data.row(i).transpose());
  std::uint64_t inside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (triangle_contains(pts[i], pts[j], pts[k], v)) ++inside;
      }
    }
  }
  return static_cast<double>(inside) / binomial3(n);
}

// O(n log n) count: a triangle of rows distinct from v misses the closed hull
// exactly when its three directions fit in an open half-circle. Each such
// triple is counted once from its first direction counter-clockwise.
// Triangles with a vertex at v always contain it.
inline double simplicial_depth_2d_sweep(const DataSet& data, const Vector& v) {
  detail::require_planar(data, "simplicial_depth_2d");
  data.require_dim(v);
  const std::size_t n = data.n();
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "simplicial depth needs n >= 3");
  auto [angles, coincident] = detail::sorted_angles(data, v);
  (void)coincident;
  const std::size_t m = angles.size();

  constexpr double pi = std::numbers::pi;
  double outside = 0.0;
  std::size_t j = 0;  // index into the doubled sequence
  for (std::size_t i = 0; i < m; ++i) {
    if (j < i + 1) j = i + 1;
    auto ext = [&](std::size_t t) { return t < m ? angles[t] : angles[t - m] + 2.0 * pi; };
    while (j < i + m && ext(j) - angles[i] < pi) ++j;
    const double c = static_cast<double>(j - i - 1);
    outside += c * (c - 1.0) / 2.0;
  }
  const double total = binomial3(n);
  return std::clamp((total - outside) / total, 0.0, 1.0);
}

inline constexpr std::size_t kSimplicialEnumerationLimit = 500;

// Fraction of closed data triangles containing v. Enumerates directly up to
// kSimplicialEnumerationLimit rows, sweeps beyond.
inline double simplicial_depth_2d(const DataSet& data, const Vector& v) {
  return data.n() <= kSimplicialEnumerationLimit ? simplicial_depth_2d_enumerate(data, v)
                                                 : simplicial_depth_2d_sweep(data, v);
}

// --------------------------------------------------------- projection

inline constexpr std::size_t kDefaultProjectionDirections = 1000;

// Approximate projection depth over n_dirs random unit directions drawn from
// `seed`. Directions are drawn in a fixed sequence, so a larger n_dirs uses a
// superset of the directions of a smaller one.
class ProjectionDepth {
 public:
  ProjectionDepth(const DataSet& data, std::size_t n_dirs, std::uint64_t seed) {
    if (n_dirs < 1) throw Error(ErrorKind::InvalidArgument, "projection depth needs at least one direction");
    const auto d = static_cast<Eigen::Index>(data.d());
    RngStream rng(seed);
    std::vector<double> proj(data.n());
    for (std::size_t t = 0; t < n_dirs; ++t) {
      Vector u(d);
      double norm = 0.0;
      do {
        for (Eigen::Index j = 0; j < d; ++j) u(j) = rng.normal();
        norm = u.norm();
      } while (norm == 0.0);
      u /= norm;
      for (std::size_t i = 0; i < data.n(); ++i) proj[i] = data.row(i).dot(u);
      const Sample1D s(proj);
      const double med = median_univariate(s);
      const double mad = g_univariate(s, med);
      if (!(mad > 0.0)) {
        ++skipped_;
        continue;
      }
      dirs_.push_back({std::move(u), med, mad});
    }
    if (dirs_.empty()) throw Error(ErrorKind::AllDirectionsDegenerate, "every sampled direction has zero MAD");
  }

  std::size_t skipped() const noexcept { return skipped_; }
  std::size_t used() const noexcept { return dirs_.size(); }

  // Largest standardized outlyingness over the retained directions.
  double outlyingness(const Vector& v) const {
    double worst = 0.0;
    for (const auto& dir : dirs_) {
      if (v.size() != dir.u.size()) throw Error(ErrorKind::DimensionMismatch, "query dimension differs from data");
      worst = std::max(worst, std::fabs(dir.u.dot(v) - dir.median) / dir.mad);
    }
    return worst;
  }

  double operator()(const Vector& v) const { return 1.0 / (1.0 + outlyingness(v)); }

 private:
  struct Direction {
    Vector u;
    double median;
    double mad;
  };
  std::vector<Direction> dirs_;
  std::size_t skipped_ = 0;
};

inline double projection_depth(const DataSet& data, const Vector& v, std::size_t n_dirs, std::uint64_t seed) {
  return ProjectionDepth(data, n_dirs, seed)(v);
}

}  // namespace mrdepth
