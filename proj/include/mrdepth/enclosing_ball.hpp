#pragma once

// Smallest enclosing ball of a point set (Welzl's incremental algorithm) in
// any dimension. Used by the radial-center search: the ball around the
// ceil(n/2) rows nearest to v has radius <= G(v), so its center never makes G
// worse.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mrdepth/dataset.hpp"

namespace mrdepth {

struct Ball {
  Vector center;
  double radius = -1.0;  // negative: empty ball

  bool contains(const Vector& p) const {
    if (radius < 0.0) return false;
    const double dist = (p - center).norm();
    return dist <= radius * (1.0 + 1e-12) + 1e-14;
  }
};

namespace detail {

// Smallest ball with every point of `boundary` on its sphere, searched in
// the affine hull of the boundary. Returns an empty ball when the boundary
// points are affinely dependent.
inline Ball circumball(const std::vector<Vector>& boundary, Eigen::Index dim) {
  Ball b;
  if (boundary.empty()) {
    b.center = Vector::Zero(dim);
    return b;
  }
  const Vector& p0 = boundary.front();
  const auto m = static_cast<Eigen::Index>(boundary.size()) - 1;
  if (m == 0) {
    b.center = p0;
    b.radius = 0.0;
    return b;
  }
  Eigen::MatrixXd a(m, dim);
  for (Eigen::Index i = 0; i < m; ++i) a.row(i) = (boundary[static_cast<std::size_t>(i + 1)] - p0).transpose();
  const Eigen::MatrixXd gram = a * a.transpose();
  const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  lu.setThreshold(1e-12);
  if (lu.rank() < m) return Ball{Vector::Zero(dim), -1.0};
  const Eigen::VectorXd lambda = lu.solve(rhs);
  b.center = p0 + a.transpose() * lambda;
  double r = 0.0;
  for (const auto& p : boundary) r = std::max(r, (p - b.center).norm());
  b.radius = r;
  return b;
}

inline Ball welzl(const std::vector<Vector>& pts, std::size_t end, std::vector<Vector>& boundary,
                  Eigen::Index dim) {
  Ball ball = circumball(boundary, dim);
  if (static_cast<Eigen::Index>(boundary.size()) == dim + 1) return ball;
  for (std::size_t i = 0; i < end; ++i) {
    if (ball.contains(pts[i])) continue;
    boundary.push_back(pts[i]);
    Ball candidate = welzl(pts, i, boundary, dim);
    boundary.pop_back();
    if (candidate.radius >= 0.0) ball = std::move(candidate);
  }
  return ball;
}

}  // namespace detail

// Points are processed in the given order; callers shuffle deterministically
// if they want the expected-linear running time.
inline Ball min_enclosing_ball(const std::vector<Vector>& pts) {
  if (pts.empty()) return Ball{};
  std::vector<Vector> boundary;
  boundary.reserve(static_cast<std::size_t>(pts.front().size()) + 1);
  return detail::welzl(pts, pts.size(), boundary, pts.front().size());
}

}  // namespace mrdepth
