#pragma once

// Global minimizers of the empirical median radius in one and two
// dimensions. In 1-D the minimizer is the midpoint of the shortest interval
// holding ceil(n/2) points. In 2-D it is the center of the smallest circle
// holding ceil(n/2) points, found with a per-point angular sweep: some data
// point lies on the optimal circle, and for a fixed boundary point p and
// radius r every other point q covers an arc of admissible centers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "mrdepth/dataset.hpp"
#include "mrdepth/radial_core.hpp"
#include "mrdepth/random.hpp"

namespace mrdepth::detail {

struct ArgminResult {
  Vector location;
  double g = std::numeric_limits<double>::infinity();
};

inline double g_at(const DataSet& data, const Vector& v) {
  std::vector<double> sq(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) sq[i] = (data.row(i).transpose() - v).squaredNorm();
  const std::size_t k = radius_rank(sq.size());
  std::nth_element(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(k - 1), sq.end());
  return std::sqrt(sq[k - 1]);
}

inline ArgminResult shortest_half_midpoint(const DataSet& data) {
  std::vector<double> xs(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) xs[i] = data.matrix()(static_cast<Eigen::Index>(i), 0);
  std::sort(xs.begin(), xs.end());
  const std::size_t k = radius_rank(xs.size());
  std::size_t best = 0;
  for (std::size_t i = 1; i + k <= xs.size(); ++i) {
    if (xs[i + k - 1] - xs[i] < xs[best + k - 1] - xs[best]) best = i;
  }
  ArgminResult r;
  r.location = Vector::Constant(1, 0.5 * (xs[best] + xs[best + k - 1]));
  r.g = g_at(data, r.location);
  return r;
}

// Neighbours of one boundary point p, as polar offsets.
struct PolarNeighbours {
  Vector origin;
  std::size_t coincident = 0;  // rows equal to p, p included
  std::vector<std::pair<double, double>> polar;  // (angle, distance)
};

// Max number of rows covered by a circle of radius r through p, and the
// center achieving it (middle of the best arc).
inline std::pair<std::size_t, Vector> best_circle_through(const PolarNeighbours& nb, double r,
                                                          std::vector<std::pair<double, int>>& events) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  events.clear();
  std::size_t initial = 0;
  for (const auto& [phi, dist] : nb.polar) {
    if (dist > 2.0 * r) continue;
    const double alpha = std::acos(std::min(1.0, dist / (2.0 * r)));
    double s = phi - alpha;
    if (s < 0.0) s += two_pi;
    if (s >= two_pi) s -= two_pi;
    const double e = s + 2.0 * alpha;
    if (e >= two_pi) {
      ++initial;
      events.emplace_back(e - two_pi, -1);
      events.emplace_back(s, +1);
    } else {
      events.emplace_back(s, +1);
      events.emplace_back(e, -1);
    }
  }
  // Closed arcs: at equal angles, openings come before closings.
  std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  });

  std::size_t count = initial;
  std::size_t best = initial;
  double best_lo = 0.0;
  double best_hi = events.empty() ? two_pi : events.front().first;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].second > 0) {
      ++count;
      if (count > best) {
        best = count;
        best_lo = events[i].first;
        best_hi = i + 1 < events.size() ? events[i + 1].first : two_pi;
      }
    } else {
      --count;
    }
  }
  const double theta = 0.5 * (best_lo + best_hi);
  Vector center = nb.origin;
  center(0) += r * std::cos(theta);
  center(1) += r * std::sin(theta);
  return {best + nb.coincident, center};
}

// Smallest circle holding ceil(n/2) rows. `upper` is a known achievable G
// (any candidate) used to prune boundary points that cannot improve it.
// Boundary points are visited in a fixed shuffled order; only points that can
// beat the running best trigger a bisection on their radius.
inline ArgminResult smallest_half_circle(const DataSet& data, ArgminResult upper) {
  const std::size_t n = data.n();
  const std::size_t k = radius_rank(n);
  ArgminResult best = std::move(upper);
  if (best.g == 0.0 || k <= 1) return best;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[static_cast<std::size_t>(mix64(i) % i)]);

  PolarNeighbours nb;
  std::vector<std::pair<double, int>> events;
  for (std::size_t p : order) {
    nb.origin = data.row(p).transpose();
    nb.coincident = 0;
    nb.polar.clear();
    const double reach = 2.0 * best.g;
    for (std::size_t q = 0; q < n; ++q) {
      const double dx = data.matrix()(static_cast<Eigen::Index>(q), 0) - nb.origin(0);
      const double dy = data.matrix()(static_cast<Eigen::Index>(q), 1) - nb.origin(1);
      const double dist = std::hypot(dx, dy);
      if (dist == 0.0) {
        ++nb.coincident;
      } else if (dist <= reach) {
        nb.polar.emplace_back(std::atan2(dy, dx), dist);
      }
    }
    if (nb.coincident >= k) {
      best = {nb.origin, 0.0};
      return best;
    }
    if (nb.coincident + nb.polar.size() < k) continue;

    // Quick rejection: can a circle through p beat the current best at all?
    double hi = best.g * (1.0 - 1e-13);
    auto [count, center] = best_circle_through(nb, hi, events);
    if (count < k) continue;

    Vector feasible = center;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      auto [c, ctr] = best_circle_through(nb, mid, events);
      if (c >= k) {
        hi = mid;
        feasible = ctr;
      } else {
        lo = mid;
      }
    }
    const double g = g_at(data, feasible);
    if (g < best.g) best = {feasible, g};
  }
  return best;
}

}  // namespace mrdepth::detail
