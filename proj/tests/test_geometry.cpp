#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mrdepth/enclosing_ball.hpp"
#include "mrdepth/geometry.hpp"
#include "mrdepth/random.hpp"
#include "mrdepth/scenario.hpp"
#include "oracles.hpp"

using namespace mrdepth;

namespace {

DataSet square() { return DataSet::from_rows({{0, 0}, {2, 0}, {0, 2}, {2, 2}}); }

CenterEstimate fixed_center(Vector at, const DataSet& data) {
  CenterEstimate c;
  c.location = std::move(at);
  c.method = CenterMethod::RadialArgmin;
  c.g_at_center = g_multivariate(data, c.location);
  return c;
}

}  // namespace

TEST(GMultivariate, SquareCorners) {
  EXPECT_DOUBLE_EQ(g_multivariate(square(), make_point({1, 1})), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(g_multivariate(square(), make_point({0, 0})), 2.0);
  const DataSet one = DataSet::from_rows({{3, -1}});
  EXPECT_DOUBLE_EQ(g_multivariate(one, make_point({3, -1})), 0.0);
}

TEST(GMultivariate, DimensionMismatch) {
  try {
    g_multivariate(square(), make_point({1, 1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(CoordinateMedian, Examples) {
  EXPECT_TRUE(coordinate_median(square()).isApprox(make_point({1, 1})));
  EXPECT_TRUE(coordinate_median(DataSet::from_rows({{4, 5}})).isApprox(make_point({4, 5})));
  const Vector m = coordinate_median(DataSet::from_rows({{0, 0}, {10, 0}, {0, 10}}));
  EXPECT_EQ(m(0), 0.0);
  EXPECT_EQ(m(1), 0.0);
}

TEST(GeometricMedian, SymmetricSquare) {
  const auto c = geometric_median(square());
  EXPECT_NEAR(c.location(0), 1.0, 1e-8);
  EXPECT_NEAR(c.location(1), 1.0, 1e-8);
  EXPECT_TRUE(c.converged);
}

TEST(GeometricMedian, MajorityAtomDominates) {
  const DataSet data = DataSet::from_rows({{0, 0}, {0, 0}, {0, 0}, {9, 9}});
  const auto c = geometric_median(data);
  EXPECT_LT(c.location.norm(), 1e-8);
  const double at = sum_of_distances(data, make_point({0, 0}));
  for (double dx = -0.1; dx <= 0.1; dx += 0.02) {
    for (double dy = -0.1; dy <= 0.1; dy += 0.02) {
      EXPECT_LE(at, sum_of_distances(data, make_point({dx, dy})) + 1e-12);
    }
  }
}

TEST(GeometricMedian, CollinearPoints) {
  const auto c = geometric_median(DataSet::from_rows({{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_NEAR(c.location(0), 1.0, 1e-8);
  EXPECT_NEAR(c.location(1), 0.0, 1e-8);
}

TEST(GeometricMedian, LocallyOptimal) {
  RngStream rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const DataSet data = oracle::random_planar(rng, 5 + rng.below(40), false);
    const auto c = geometric_median(data);
    const double at = sum_of_distances(data, c.location);
    for (int k = 0; k < 16; ++k) {
      const double t = 2 * std::numbers::pi * k / 16;
      const Vector probe = c.location + 1e-4 * make_point({std::cos(t), std::sin(t)});
      EXPECT_LE(at, sum_of_distances(data, probe) + 1e-9);
    }
  }
}

// Every edge midpoint of the square holds two corners at distance 1, so the
// minimum of G is 1 and (1, 1) with G = sqrt(2) is not a minimizer.
TEST(RadialCenter, SquareMinimumSitsOnAnEdge) {
  const auto c = radial_center(square());
  EXPECT_DOUBLE_EQ(c.g_at_center, 1.0);
  EXPECT_DOUBLE_EQ(g_multivariate(square(), c.location), 1.0);
  EXPECT_LT(c.g_at_center, g_multivariate(square(), make_point({1, 1})));
  const double off_x = std::fabs(std::fabs(c.location(0) - 1.0) - 1.0);
  const double off_y = std::fabs(std::fabs(c.location(1) - 1.0) - 1.0);
  EXPECT_LT(std::min(off_x + std::fabs(c.location(1) - 1.0), off_y + std::fabs(c.location(0) - 1.0)), 1e-9);
}

TEST(RadialCenter, MajorityAtom) {
  std::vector<std::vector<double>> rows(5, {0.0, 0.0});
  for (int i = 0; i < 4; ++i) rows.push_back({100.0, 0.0});
  const auto c = radial_center(DataSet::from_rows(rows));
  EXPECT_EQ(c.g_at_center, 0.0);
  EXPECT_LT(c.location.norm(), 1e-9);
}

TEST(RadialCenter, NeverWorseThanCandidates) {
  RngStream rng(23);
  for (std::size_t d : {1u, 2u, 3u}) {
    for (int rep = 0; rep < 10; ++rep) {
      const std::size_t n = 5 + rng.below(60);
      RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = j == 0 ? rng.exponential() : rng.normal();
      }
      const DataSet data(m);
      const auto c = radial_center(data);
      EXPECT_LE(c.g_at_center, g_multivariate(data, coordinate_median(data)));
      EXPECT_LE(c.g_at_center, g_multivariate(data, geometric_median(data).location));
      for (std::size_t i = 0; i < n; ++i) EXPECT_LE(c.g_at_center, g_multivariate(data, data.row(i).transpose()));
      EXPECT_DOUBLE_EQ(c.g_at_center, g_multivariate(data, c.location));
    }
  }
}

TEST(RadialCenter, PlanarMinimumBeatsDenseGrid) {
  RngStream rng(29);
  for (int rep = 0; rep < 5; ++rep) {
    const DataSet data = oracle::random_planar(rng, 7 + rng.below(20), false);
    const auto c = radial_center(data);
    const auto lo = data.matrix().colwise().minCoeff();
    const auto hi = data.matrix().colwise().maxCoeff();
    for (int i = 0; i <= 120; ++i) {
      for (int j = 0; j <= 120; ++j) {
        const Vector v = make_point({lo(0) + (hi(0) - lo(0)) * i / 120.0, lo(1) + (hi(1) - lo(1)) * j / 120.0});
        EXPECT_LE(c.g_at_center, g_multivariate(data, v) * (1 + 1e-12));
      }
    }
  }
}

TEST(RadialCenter, UnivariateShortestHalf) {
  RngStream rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> xs(1 + rng.below(30));
    for (auto& x : xs) x = rng.normal();
    std::vector<std::vector<double>> rows;
    for (double x : xs) rows.push_back({x});
    const auto c = radial_center(DataSet::from_rows(rows));
    std::sort(xs.begin(), xs.end());
    const std::size_t k = (xs.size() + 1) / 2;
    double best = INFINITY;
    for (std::size_t i = 0; i + k <= xs.size(); ++i) best = std::min(best, (xs[i + k - 1] - xs[i]) / 2);
    EXPECT_NEAR(c.g_at_center, best, 1e-12);
  }
}

TEST(CentralScale, Examples) {
  const auto c = fixed_center(make_point({1, 1}), square());
  EXPECT_DOUBLE_EQ(central_scale(square(), c), std::sqrt(2.0));
  const DataSet same = DataSet::from_rows({{1, 2}, {1, 2}, {1, 2}});
  EXPECT_EQ(central_scale(same, radial_center(same)), 0.0);
}

TEST(HMultivariate, Examples) {
  const auto c = fixed_center(make_point({1, 1}), square());
  EXPECT_DOUBLE_EQ(h_multivariate(square(), make_point({0, 0}), c), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(h_multivariate(square(), c.location, c), 1.0);
  const DataSet same = DataSet::from_rows({{1, 2}, {1, 2}, {1, 2}});
  try {
    h_multivariate(same, make_point({0, 0}), radial_center(same));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateScale);
  }
}

TEST(Properties, RigidMotionInvariance) {
  RngStream rng(37);
  for (int rep = 0; rep < 20; ++rep) {
    const DataSet data = oracle::random_planar(rng, 10 + rng.below(50), false);
    const Eigen::Matrix2d r = oracle::rotation(rng.uniform() * 6.28);
    const Vector b = make_point({rng.normal() * 5, rng.normal() * 5});
    const DataSet moved = oracle::transform(data, r, b);
    const Vector v = make_point({rng.normal(), rng.normal()});
    EXPECT_NEAR(g_multivariate(data, v), g_multivariate(moved, r * v + b), 1e-9);
    EXPECT_NEAR(radial_center(data).g_at_center, radial_center(moved).g_at_center, 1e-9);
  }
}

TEST(Properties, OneLipschitzAndGrowth) {
  RngStream rng(41);
  const DataSet data = generate_scenario({ScenarioTag::Skewed, 300, 3});
  double max_norm = 0;
  for (std::size_t i = 0; i < data.n(); ++i) max_norm = std::max(max_norm, data.row(i).norm());
  for (int rep = 0; rep < 200; ++rep) {
    const Vector a = make_point({rng.normal() * 3, rng.normal() * 3});
    const Vector b = make_point({rng.normal() * 3, rng.normal() * 3});
    EXPECT_LE(std::fabs(g_multivariate(data, a) - g_multivariate(data, b)), (a - b).norm() + 1e-12);
    const Vector far = a * 1000;
    EXPECT_GE(g_multivariate(data, far), far.norm() - max_norm);
  }
}

TEST(Properties, BreakdownUnderMinorityContamination) {
  const DataSet clean = generate_scenario({ScenarioTag::Gaussian, 200, 5});
  double diameter = 0;
  for (std::size_t i = 0; i < clean.n(); ++i) {
    for (std::size_t j = i + 1; j < clean.n(); ++j) diameter = std::max(diameter, (clean.row(i) - clean.row(j)).norm());
  }
  RowMatrix dirty = clean.matrix();
  for (Eigen::Index i = 0; i < 60; ++i) dirty.row(i) << 1e6, 1e6 * (i % 2 ? 1 : -1);
  const double g0 = radial_center(clean).g_at_center;
  const double g1 = radial_center(DataSet(dirty)).g_at_center;
  EXPECT_LT(std::fabs(g1 - g0), diameter);
}

TEST(EnclosingBall, CoversAndIsTight) {
  RngStream rng(43);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t d = 1 + rep % 4;
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < 2 + rng.below(30); ++i) {
      Vector p(static_cast<Eigen::Index>(d));
      for (auto& x : p) x = rng.normal();
      pts.push_back(p);
    }
    const Ball b = min_enclosing_ball(pts);
    double far = 0;
    for (const auto& p : pts) {
      EXPECT_LE((p - b.center).norm(), b.radius * (1 + 1e-9) + 1e-12);
      far = std::max(far, (p - b.center).norm());
    }
    EXPECT_NEAR(far, b.radius, 1e-9 * (1 + b.radius));
    double max_pair = 0;
    for (const auto& p : pts) {
      for (const auto& q : pts) max_pair = std::max(max_pair, (p - q).norm());
    }
    EXPECT_GE(b.radius, max_pair / 2 - 1e-12);
  }
}
