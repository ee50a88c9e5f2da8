#pragma once

// Seeded data generators for the simulation designs and the deterministic
// quantile designs used by the univariate profiles.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mrdepth/dataset.hpp"
#include "mrdepth/error.hpp"
#include "mrdepth/random.hpp"

namespace mrdepth {

enum class ScenarioTag { Gaussian, Skewed, Bimodal, Contaminated1D, Trimodal1D, Normal1D, HighDim };

constexpr std::string_view to_string(ScenarioTag t) noexcept {
  switch (t) {
    case ScenarioTag::Gaussian: return "gaussian";
    case ScenarioTag::Skewed: return "skewed";
    case ScenarioTag::Bimodal: return "bimodal";
    case ScenarioTag::Contaminated1D: return "contaminated1d";
    case ScenarioTag::Trimodal1D: return "trimodal1d";
    case ScenarioTag::Normal1D: return "normal1d";
    case ScenarioTag::HighDim: return "highdim";
  }
  return "unknown";
}

inline ScenarioTag parse_scenario_tag(std::string_view s) {
  for (auto t : {ScenarioTag::Gaussian, ScenarioTag::Skewed, ScenarioTag::Bimodal, ScenarioTag::Contaminated1D,
                 ScenarioTag::Trimodal1D, ScenarioTag::Normal1D, ScenarioTag::HighDim}) {
    if (to_string(t) == s) return t;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown scenario '" + std::string(s) + "'");
}

struct Scenario {
  ScenarioTag tag = ScenarioTag::Gaussian;
  // Rows for the random designs; grid size m for the deterministic ones;
  // main-mass size for contaminated1d (5 outliers are appended).
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::size_t dim = 50;  // highdim only
};

inline constexpr std::size_t kContaminationPoints = 5;

// p_i = i / (m + 1), i = 1..m.
inline std::vector<double> probability_grid(std::size_t m) {
  std::vector<double> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<double>(i + 1) / static_cast<double>(m + 1);
  return p;
}

// Draw order: row by row, coordinates left to right. The stream order is
// part of the dataset definition.
inline DataSet generate_scenario(const Scenario& s) {
  if (s.n < 1) throw Error(ErrorKind::InvalidArgument, "scenario needs n >= 1");
  RngStream rng(s.seed);
  const auto n = static_cast<Eigen::Index>(s.n);

  switch (s.tag) {
    case ScenarioTag::Gaussian: {
      RowMatrix m(n, 2);
      for (Eigen::Index i = 0; i < n; ++i) {
        m(i, 0) = rng.normal();
        m(i, 1) = rng.normal();
      }
      return DataSet(std::move(m));
    }
    case ScenarioTag::Skewed: {
      RowMatrix m(n, 2);
      for (Eigen::Index i = 0; i < n; ++i) {
        m(i, 0) = rng.normal();
        m(i, 1) = rng.exponential() - 1.0;
      }
      return DataSet(std::move(m));
    }
    case ScenarioTag::Bimodal: {
      RowMatrix m(n, 2);
      const Eigen::Index first = n / 2;
      for (Eigen::Index i = 0; i < n; ++i) {
        m(i, 0) = rng.normal(i < first ? -2.0 : 2.0, 1.0);
        m(i, 1) = rng.normal();
      }
      return DataSet(std::move(m));
    }
    case ScenarioTag::Contaminated1D: {
      const auto extra = static_cast<Eigen::Index>(kContaminationPoints);
      RowMatrix m(n + extra, 1);
      for (Eigen::Index i = 0; i < n; ++i) m(i, 0) = rng.normal(-3.0, 0.5);
      for (Eigen::Index i = 0; i < extra; ++i) m(n + i, 0) = rng.normal(3.0, 0.5);
      return DataSet(std::move(m));
    }
    case ScenarioTag::Trimodal1D: {
      const auto p = probability_grid(s.n);
      RowMatrix m(3 * n, 1);
      const double means[3] = {-2.0, 0.0, 3.0};
      const double sds[3] = {0.75, 0.75, 0.8};
      for (Eigen::Index c = 0; c < 3; ++c) {
        for (Eigen::Index i = 0; i < n; ++i) {
          m(c * n + i, 0) = normal_quantile(p[static_cast<std::size_t>(i)], means[c], sds[c]);
        }
      }
      return DataSet(std::move(m));
    }
    case ScenarioTag::Normal1D: {
      const auto p = probability_grid(s.n);
      RowMatrix m(n, 1);
      for (Eigen::Index i = 0; i < n; ++i) m(i, 0) = std_normal_quantile(p[static_cast<std::size_t>(i)]);
      return DataSet(std::move(m));
    }
    case ScenarioTag::HighDim: {
      if (s.dim < 1) throw Error(ErrorKind::InvalidArgument, "highdim scenario needs dim >= 1");
      const auto d = static_cast<Eigen::Index>(s.dim);
      RowMatrix m(n, d);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal();
      }
      return DataSet(std::move(m));
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown scenario");
}

// True for designs that do not consume the random stream.
constexpr bool is_deterministic(ScenarioTag t) noexcept {
  return t == ScenarioTag::Trimodal1D || t == ScenarioTag::Normal1D;
}

}  // namespace mrdepth
