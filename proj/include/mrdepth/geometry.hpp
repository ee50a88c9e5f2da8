#pragma once

// Multivariate median-radius functional and the two centers it is measured
// from: the geometric median (minimizer of the summed distances) and the
// radial center (minimizer of G itself).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

#include "mrdepth/dataset.hpp"
#include "mrdepth/enclosing_ball.hpp"
#include "mrdepth/error.hpp"
#include "mrdepth/radial_argmin.hpp"
#include "mrdepth/radial_core.hpp"
#include "mrdepth/random.hpp"

namespace mrdepth {

enum class CenterMethod { CoordinateMedian, GeometricMedian, RadialArgmin };

constexpr std::string_view to_string(CenterMethod m) noexcept {
  switch (m) {
    case CenterMethod::CoordinateMedian: return "coordinate-median";
    case CenterMethod::GeometricMedian: return "geometric-median";
    case CenterMethod::RadialArgmin: return "radial-argmin";
  }
  return "unknown";
}

struct CenterEstimate {
  Vector location;
  CenterMethod method = CenterMethod::RadialArgmin;
  double g_at_center = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

// ceil(n/2)-th smallest entry of `values` (partially reorders it).
inline double radius_order_statistic(std::vector<double>& values) {
  const std::size_t k = radius_rank(values.size());
  auto kth = values.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(values.begin(), kth, values.end());
  return *kth;
}

inline double squared_distance(const DataSet& data, std::size_t i, const Vector& v) {
  return (data.row(i).transpose() - v).squaredNorm();
}

}  // namespace detail

// ceil(n/2)-th smallest Euclidean distance from v to the rows: the radius of
// the smallest closed ball at v holding at least half of the points.
inline double g_multivariate(const DataSet& data, const Vector& v) {
  data.require_dim(v);
  std::vector<double> sq(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) sq[i] = detail::squared_distance(data, i, v);
  return std::sqrt(detail::radius_order_statistic(sq));
}

inline Vector coordinate_median(const DataSet& data) {
  Vector out(static_cast<Eigen::Index>(data.d()));
  std::vector<double> column(data.n());
  for (std::size_t j = 0; j < data.d(); ++j) {
    for (std::size_t i = 0; i < data.n(); ++i) {
      column[i] = data.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    out(static_cast<Eigen::Index>(j)) = median_univariate(Sample1D(column));
  }
  return out;
}

inline double sum_of_distances(const DataSet& data, const Vector& v) {
  data.require_dim(v);
  double total = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) total += std::sqrt(detail::squared_distance(data, i, v));
  return total;
}

struct GeometricMedianOptions {
  double tol = 1e-10;
  int max_iter = 1000;
};

// Weiszfeld iteration started at the coordinate median. When the iterate sits
// on data points (within tol) the modified step of Vardi and Zhang is used:
// with eta coincident points and r the norm of the summed unit pulls of the
// rest, the iterate is optimal if r <= eta, and otherwise moves to
// (1 - eta/r) T + (eta/r) y where T is the plain Weiszfeld target.
inline CenterEstimate geometric_median(const DataSet& data, GeometricMedianOptions opts = {}) {
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (opts.max_iter < 0) throw Error(ErrorKind::InvalidArgument, "max_iter must be non-negative");

  const auto d = static_cast<Eigen::Index>(data.d());
  Vector y = coordinate_median(data);
  CenterEstimate est;
  est.method = CenterMethod::GeometricMedian;

  for (int it = 0; it < opts.max_iter; ++it) {
    Vector weighted = Vector::Zero(d);
    Vector pull = Vector::Zero(d);
    double weight_sum = 0.0;
    double coincident = 0.0;
    for (std::size_t i = 0; i < data.n(); ++i) {
      const Vector diff = data.row(i).transpose() - y;
      const double dist = diff.norm();
      if (dist < opts.tol) {
        coincident += 1.0;
        continue;
      }
      weighted += data.row(i).transpose() / dist;
      weight_sum += 1.0 / dist;
      pull += diff / dist;
    }

    Vector next;
    if (weight_sum == 0.0) {
      next = y;  // every point coincides with y
    } else {
      const Vector target = weighted / weight_sum;
      if (coincident == 0.0) {
        next = target;
      } else {
        const double r = pull.norm();
        if (r <= coincident) {
          next = y;
        } else {
          const double ratio = coincident / r;
          next = (1.0 - ratio) * target + ratio * y;
        }
      }
    }

    const double step = (next - y).norm();
    y = next;
    est.iterations = it + 1;
    if (step < opts.tol) {
      est.converged = true;
      break;
    }
  }

  est.location = y;
  est.g_at_center = g_multivariate(data, y);
  return est;
}

struct RadialCenterOptions {
  double tol = 1e-9;
  int max_iter = 100000;  // accepted moves
  int max_rounds = 64;    // alternations of ball refinement and compass search
};

namespace detail {

// Rows at the ceil(n/2) smallest distances from x (ties by row index),
// duplicates removed, in a fixed pseudo-random order.
inline std::vector<Vector> nearest_half(const DataSet& data, const Vector& x) {
  const std::size_t n = data.n();
  std::vector<std::pair<double, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = {squared_distance(data, i, x), i};
  const std::size_t k = radius_rank(n);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
  std::vector<std::size_t> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = order[i].second;
  std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = data.row(a);
    const auto rb = data.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [&](std::size_t a, std::size_t b) { return data.row(a) == data.row(b); }),
             rows.end());
  for (std::size_t i = rows.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(mix64(i) % i);
    std::swap(rows[i - 1], rows[j]);
  }
  std::vector<Vector> pts;
  pts.reserve(rows.size());
  for (std::size_t r : rows) pts.emplace_back(data.row(r).transpose());
  return pts;
}

}  // namespace detail

// Minimizer of v -> G(v). Candidates are every row, the coordinate median
// and the geometric median; the best one (ties: earliest candidate) seeds the
// search. For d = 1 and d = 2 the global minimizer is then computed directly
// (shortest half interval, smallest circle holding half the rows). Finally,
// in every dimension, two local moves that only accept strict decreases of G
// are alternated:
//  - ball step: jump to the center of the smallest ball enclosing the
//    ceil(n/2) rows nearest to the iterate (its radius is at most G there);
//  - compass search over +/- each axis, per-axis step starting at a quarter
//    of the axis' data range and halving until below tol.
// The result never exceeds any candidate's G. For d >= 3 global optimality
// is not guaranteed when G has several basins.
inline CenterEstimate radial_center(const DataSet& data, RadialCenterOptions opts = {}) {
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");

  const std::size_t n = data.n();
  const std::size_t d = data.d();

  std::vector<Vector> candidates;
  candidates.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) candidates.emplace_back(data.row(i).transpose());
  candidates.push_back(coordinate_median(data));
  candidates.push_back(geometric_median(data).location);

  std::size_t best = 0;
  double best_g = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double g = g_multivariate(data, candidates[c]);
    if (g < best_g) {
      best_g = g;
      best = c;
    }
  }

  Vector x = candidates[best];
  double gx = best_g;

  if (d <= 2 && gx > 0.0) {
    detail::ArgminResult exact = d == 1 ? detail::shortest_half_midpoint(data)
                                        : detail::smallest_half_circle(data, {x, gx});
    if (exact.g < gx) {
      x = std::move(exact.location);
      gx = exact.g;
    }
  }

  std::vector<double> range(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto col = data.matrix().col(static_cast<Eigen::Index>(j));
    range[j] = col.maxCoeff() - col.minCoeff();
  }

  CenterEstimate est;
  est.method = CenterMethod::RadialArgmin;
  int moves = 0;
  auto budget_left = [&] { return moves < opts.max_iter; };

  auto accept = [&](Vector trial) {
    const double gt = g_multivariate(data, trial);
    if (gt < gx) {
      x = std::move(trial);
      gx = gt;
      ++moves;
      return true;
    }
    return false;
  };

  bool settled = false;
  for (int round = 0; round < opts.max_rounds && budget_left() && gx > 0.0; ++round) {
    bool improved = false;

    while (budget_left() && gx > 0.0) {
      const Ball ball = min_enclosing_ball(detail::nearest_half(data, x));
      if (ball.radius < 0.0 || !accept(ball.center)) break;
      improved = true;
    }

    std::vector<double> step(d);
    for (std::size_t j = 0; j < d; ++j) step[j] = range[j] / 4.0;
    while (budget_left() && gx > 0.0) {
      if (std::all_of(step.begin(), step.end(), [&](double s) { return s < opts.tol; })) break;
      bool moved = false;
      for (std::size_t j = 0; j < d && budget_left(); ++j) {
        if (step[j] < opts.tol) continue;
        for (double sign : {1.0, -1.0}) {
          Vector trial = x;
          trial(static_cast<Eigen::Index>(j)) += sign * step[j];
          if (accept(std::move(trial))) {
            moved = true;
            break;
          }
        }
      }
      if (moved) {
        improved = true;
      } else {
        for (double& s : step) s *= 0.5;
      }
    }

    if (!improved) {
      settled = true;
      break;
    }
  }

  est.location = x;
  est.g_at_center = gx;
  est.iterations = moves;
  est.converged = settled || gx == 0.0;
  return est;
}

// G at the center: the multivariate analogue of the MAD.
inline double central_scale(const DataSet& data, const CenterEstimate& center) {
  return g_multivariate(data, center.location);
}

inline double h_multivariate(const DataSet& data, const Vector& v, const CenterEstimate& center) {
  const double scale = central_scale(data, center);
  if (!(scale > 0.0)) throw Error(ErrorKind::DegenerateScale, "median radius at the center is zero");
  return g_multivariate(data, v) / scale;
}

}  // namespace mrdepth
