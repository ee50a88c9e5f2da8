#pragma once

// Univariate median-radius functional G(v) = Med|X - v| on an empirical
// sample, its standardized form H(v), and the one-sided tail-imbalance
// statistics at the ball boundary v -/+ G(v).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mrdepth/error.hpp"

namespace mrdepth {

// Ascending, finite, nonempty. Original order is not retained.
class Sample1D {
 public:
  explicit Sample1D(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error(ErrorKind::EmptySample);
    for (double x : values_) {
      if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite sample value");
    }
    std::sort(values_.begin(), values_.end());
  }
  explicit Sample1D(std::span<const double> values)
      : Sample1D(std::vector<double>(values.begin(), values.end())) {}

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  std::size_t count_less(double x) const {
    return static_cast<std::size_t>(std::lower_bound(values_.begin(), values_.end(), x) - values_.begin());
  }
  std::size_t count_less_equal(double x) const {
    return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), x) - values_.begin());
  }
  std::size_t count_equal(double x) const { return count_less_equal(x) - count_less(x); }

 private:
  std::vector<double> values_;
};

// Rank used for every empirical median radius: ceil(n/2), i.e. the lower
// median of the distances. With it the radius is the smallest r whose
// closed ball holds at least half of the points.
constexpr std::size_t radius_rank(std::size_t n) noexcept { return (n + 1) / 2; }

// Averaged-middle median. Used for reference locations only; radii use
// radius_rank().
inline double median_univariate(const Sample1D& sample) {
  const std::size_t n = sample.size();
  if (n % 2 == 1) return sample[n / 2];
  return 0.5 * (sample[n / 2 - 1] + sample[n / 2]);
}

// k-th smallest |x_i - v| with k = ceil(n/2). Walks outward from v over the
// sorted values, so the cost is O(log n + n/2).
inline double g_univariate(const Sample1D& sample, double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite evaluation point");
  const auto xs = sample.values();
  const std::size_t k = radius_rank(xs.size());
  std::size_t right = sample.count_less(v);
  std::size_t left = right;  // next candidate on the left is left - 1
  double dist = 0.0;
  for (std::size_t taken = 0; taken < k; ++taken) {
    const bool has_left = left > 0;
    const bool has_right = right < xs.size();
    const double dl = has_left ? v - xs[left - 1] : std::numeric_limits<double>::infinity();
    const double dr = has_right ? xs[right] - v : std::numeric_limits<double>::infinity();
    if (dl <= dr) {
      dist = dl;
      --left;
    } else {
      dist = dr;
      ++right;
    }
  }
  return dist;
}

inline double h_univariate(const Sample1D& sample, double v, double center) {
  const double scale = g_univariate(sample, center);
  if (!(scale > 0.0)) {
    throw Error(ErrorKind::DegenerateScale, "median radius at the center is zero");
  }
  return g_univariate(sample, v) / scale;
}

// One-sided slopes of G from the boundary tail imbalance. Numerators are
// kept as integer counts over n so the curvature identity holds exactly:
//   plus - minus = #{X = v - g} + #{X = v + g}.
struct Subgradient {
  long long minus_count = 0;  // #{X > v+g} - #{X <= v-g}
  long long plus_count = 0;   // #{X >= v-g} - #{X < v+g}
  std::size_t n = 1;
  double radius = 0.0;        // g at the evaluation point

  double d_minus() const noexcept { return static_cast<double>(minus_count) / static_cast<double>(n); }
  double d_plus() const noexcept { return static_cast<double>(plus_count) / static_cast<double>(n); }
  double curvature() const noexcept {
    return static_cast<double>(plus_count - minus_count) / static_cast<double>(n);
  }
  bool contains_zero() const noexcept { return minus_count <= 0 && plus_count >= 0; }
};

inline Subgradient subgradient(const Sample1D& sample, double v) {
  const double g = g_univariate(sample, v);
  const double lo = v - g;
  const double hi = v + g;
  const auto n = static_cast<long long>(sample.size());
  const auto le_lo = static_cast<long long>(sample.count_less_equal(lo));
  const auto lt_lo = static_cast<long long>(sample.count_less(lo));
  const auto lt_hi = static_cast<long long>(sample.count_less(hi));
  const auto le_hi = static_cast<long long>(sample.count_less_equal(hi));

  Subgradient s;
  s.n = sample.size();
  s.radius = g;
  s.minus_count = (n - le_hi) - le_lo;
  s.plus_count = (n - lt_lo) - lt_hi;
  return s;
}

// A(v) = G'_+(v) - G'_-(v); equals the empirical mass on the two boundary
// points of the median-radius interval.
inline double curvature(const Sample1D& sample, double v) { return subgradient(sample, v).curvature(); }

// Mass exactly on v - g and v + g, counted directly (not through the
// subgradient counts). When g = 0 both boundaries are the same point and the
// atom is counted twice.
inline double boundary_mass(const Sample1D& sample, double v) {
  const double g = g_univariate(sample, v);
  const std::size_t hits = sample.count_equal(v - g) + sample.count_equal(v + g);
  return static_cast<double>(hits) / static_cast<double>(sample.size());
}

struct ProfileEntry {
  double v = 0.0;
  double g = 0.0;
  double h = 0.0;
  double d_minus = 0.0;
  double d_plus = 0.0;
  double a = 0.0;
};

struct RadialProfile {
  std::vector<ProfileEntry> entries;
  double center = 0.0;
  double center_scale = 0.0;
  // Set when G(center) = 0. h is then +inf off-center and 1 wherever g = 0.
  bool scale_degenerate = false;
};

inline RadialProfile profile(const Sample1D& sample, std::span<const double> grid, double center) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty profile grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw Error(ErrorKind::InvalidArgument, "non-finite grid point");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "profile grid must be strictly increasing");
    }
  }

  RadialProfile out;
  out.center = center;
  out.center_scale = g_univariate(sample, center);
  out.scale_degenerate = !(out.center_scale > 0.0);
  out.entries.reserve(grid.size());
  for (double v : grid) {
    const Subgradient s = subgradient(sample, v);
    ProfileEntry e;
    e.v = v;
    e.g = s.radius;
    if (out.scale_degenerate) {
      e.h = e.g == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
      e.h = e.g / out.center_scale;
    }
    e.d_minus = s.d_minus();
    e.d_plus = s.d_plus();
    e.a = s.curvature();
    out.entries.push_back(e);
  }
  return out;
}

// Forward finite-difference slope of g between consecutive grid entries;
// the last entry repeats the previous slope. Empty for single-point grids.
inline std::vector<double> finite_difference_slopes(const RadialProfile& prof) {
  const auto& e = prof.entries;
  std::vector<double> slopes;
  if (e.size() < 2) return slopes;
  slopes.reserve(e.size());
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    slopes.push_back((e[i + 1].g - e[i].g) / (e[i + 1].v - e[i].v));
  }
  slopes.push_back(slopes.back());
  return slopes;
}

}  // namespace mrdepth
