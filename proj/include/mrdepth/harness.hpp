#pragma once

// Reproduction of the comparison tables and the figure data sets. Every
// report is a pure function of its parameters and seed.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mrdepth/dataset.hpp"
#include "mrdepth/depth.hpp"
#include "mrdepth/depth_field.hpp"
#include "mrdepth/error.hpp"
#include "mrdepth/geometry.hpp"
#include "mrdepth/radial_core.hpp"
#include "mrdepth/random.hpp"
#include "mrdepth/rank_correlation.hpp"
#include "mrdepth/scenario.hpp"

namespace mrdepth {

// ------------------------------------------------------------- tables

struct TableOptions {
  std::size_t n_dirs = kDefaultProjectionDirections;
  // Rows used as the simplicial triangle pool (seeded subsample); 0 uses
  // every row, which the O(n log n) sweep makes affordable.
  std::size_t simplicial_pool = 0;
};

struct CorrelationReport {
  int table = 1;
  ScenarioTag scenario = ScenarioTag::Gaussian;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t simplicial_pool = 0;  // rows actually used
  std::vector<std::string> methods;
  std::vector<std::vector<double>> corr;
  std::vector<std::vector<double>> centre_dist;
  std::vector<Vector> centres;

  std::size_t index_of(std::string_view method) const {
    for (std::size_t i = 0; i < methods.size(); ++i) {
      if (methods[i] == method) return i;
    }
    throw Error(ErrorKind::InvalidArgument, "method '" + std::string(method) + "' not in report");
  }
  double correlation(std::string_view a, std::string_view b) const { return corr[index_of(a)][index_of(b)]; }
};

inline ScenarioTag table_scenario(int table) {
  switch (table) {
    case 1: return ScenarioTag::Gaussian;
    case 2: return ScenarioTag::Skewed;
    case 3: return ScenarioTag::Bimodal;
    default: throw Error(ErrorKind::InvalidArgument, "table must be 1, 2 or 3");
  }
}

// Seeded subsample of `size` distinct rows (partial Fisher-Yates), kept in
// ascending row order. size >= n returns the data unchanged.
inline DataSet subsample_rows(const DataSet& data, std::size_t size, std::uint64_t seed) {
  if (size == 0 || size >= data.n()) return data;
  std::vector<std::size_t> idx(data.n());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  RngStream rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  RowMatrix m(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(data.d()));
  for (std::size_t r = 0; r < size; ++r) m.row(static_cast<Eigen::Index>(r)) = data.row(idx[r]);
  return DataSet(std::move(m));
}

// Depth of every row under the six compared methods, in table order.
struct TableDepths {
  std::vector<std::string> methods;
  std::vector<std::vector<double>> depths;  // depths[method][row]
  CenterEstimate center;
  std::size_t simplicial_pool = 0;
};

inline TableDepths table_depths(const DataSet& data, std::uint64_t seed, const TableOptions& opts = {}) {
  detail::require_planar(data, "table reproduction");
  const std::size_t n = data.n();
  TableDepths out;
  out.center = radial_center(data);

  auto column = [&](const std::string& name, const auto& fn) {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = fn(Vector(data.row(i).transpose()));
    out.methods.push_back(name);
    out.depths.push_back(std::move(d));
  };

  const MrdDepth mrd(data, out.center);
  column("mrd", mrd);
  const MahalanobisDepth maha(data);
  column("mahalanobis", maha);
  column("tukey2d", [&](const Vector& v) { return tukey_depth_2d(data, v); });
  column("spatial", [&](const Vector& v) { return spatial_depth(data, v); });
  const DataSet pool = subsample_rows(data, opts.simplicial_pool, derive_seed(seed, "simplicial"));
  out.simplicial_pool = pool.n();
  column("simplicial2d", [&](const Vector& v) { return simplicial_depth_2d_sweep(pool, v); });
  const ProjectionDepth proj(data, opts.n_dirs, derive_seed(seed, "projection"));
  column("projection", proj);
  return out;
}

inline CorrelationReport correlation_report(const DataSet& data, const TableDepths& td) {
  const std::size_t k = td.methods.size();
  CorrelationReport rep;
  rep.n = data.n();
  rep.methods = td.methods;
  rep.simplicial_pool = td.simplicial_pool;
  rep.corr.assign(k, std::vector<double>(k, 0.0));
  rep.centre_dist.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a) rep.centres.push_back(depth_weighted_centre(data, td.depths[a]));
  for (std::size_t a = 0; a < k; ++a) {
    rep.corr[a][a] = 1.0;
    for (std::size_t b = a + 1; b < k; ++b) {
      const double r = spearman(td.depths[a], td.depths[b]);
      const double dist = (rep.centres[a] - rep.centres[b]).norm();
      rep.corr[a][b] = rep.corr[b][a] = r;
      rep.centre_dist[a][b] = rep.centre_dist[b][a] = dist;
    }
  }
  return rep;
}

// Generates the table's scenario from `seed`, evaluates the six depths at
// every row and compares them pairwise. The projection directions and the
// simplicial pool use sub-seeds derived from `seed`.
inline CorrelationReport reproduce_table(int table, std::size_t n, std::uint64_t seed, const TableOptions& opts = {}) {
  const ScenarioTag tag = table_scenario(table);
  if (n < 100) throw Error(ErrorKind::InvalidArgument, "table reproduction needs n >= 100");
  const DataSet data = generate_scenario({tag, n, seed});
  CorrelationReport rep = correlation_report(data, table_depths(data, seed, opts));
  rep.table = table;
  rep.scenario = tag;
  rep.seed = seed;
  return rep;
}

// ------------------------------------------------------------ figures

struct FigureParams {
  std::size_t n = 0;  // 0: figure default
  std::size_t d = 50;
  std::optional<std::uint64_t> seed;
  std::size_t grid_n = 100;
  double margin = 0.1;
  std::size_t profile_points = 401;
  std::size_t n_dirs = kDefaultProjectionDirections;
  double trim = 0.25;
  std::size_t queries = 100;  // figure 6
};

struct ProfileFigure {
  int id = 1;
  ScenarioTag scenario = ScenarioTag::Normal1D;
  std::size_t sample_size = 0;
  RadialProfile profile;
  std::vector<double> slopes;  // finite-difference slopes of g
};

struct FieldFigure {
  int id = 4;
  ScenarioTag scenario = ScenarioTag::Bimodal;
  std::size_t n = 0;
  CenterEstimate center;
  GridField field;
};

struct SingularityFigure {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t queries = 0;
  bool covariance_singular = false;
  std::string covariance_error;
  bool g_finite = false;
  bool h_finite = false;
  double g_min = 0.0, g_max = 0.0;
  double h_min = 0.0, h_max = 0.0;
  double central_scale = 0.0;
};

using FigureReport = std::variant<ProfileFigure, FieldFigure, SingularityFigure>;

inline bool figure_is_stochastic(int id) { return id >= 3 && id <= 7; }

// Evaluation grid for the univariate figures: profile_points equally spaced
// points over [min - 1, max + 1]. The default count is odd so the midpoint of
// a symmetric design is a grid node.
inline std::vector<double> profile_grid(const Sample1D& s, std::size_t points) {
  if (points < 2) throw Error(ErrorKind::InvalidArgument, "profile grid needs at least two points");
  const double lo = s[0] - 1.0;
  const double hi = s[s.size() - 1] + 1.0;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

namespace detail {

inline std::vector<double> first_column(const DataSet& data) {
  std::vector<double> xs(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) xs[i] = data.matrix()(static_cast<Eigen::Index>(i), 0);
  return xs;
}

inline ProfileFigure profile_figure(int id, ScenarioTag tag, std::size_t n, std::uint64_t seed,
                                    const FigureParams& p) {
  const DataSet data = generate_scenario({tag, n, seed});
  const Sample1D sample(first_column(data));
  ProfileFigure fig;
  fig.id = id;
  fig.scenario = tag;
  fig.sample_size = sample.size();
  const auto grid = profile_grid(sample, p.profile_points);
  fig.profile = profile(sample, grid, median_univariate(sample));
  fig.slopes = finite_difference_slopes(fig.profile);
  return fig;
}

}  // namespace detail

inline FigureReport reproduce_figure(int id, const FigureParams& p) {
  if (id < 1 || id > 7) throw Error(ErrorKind::InvalidArgument, "figure id must be in 1..7");
  if (figure_is_stochastic(id) && !p.seed) {
    throw Error(ErrorKind::InvalidArgument, "figure " + std::to_string(id) + " is stochastic and needs a seed");
  }
  const std::uint64_t seed = p.seed.value_or(0);

  switch (id) {
    case 1: return detail::profile_figure(1, ScenarioTag::Normal1D, p.n ? p.n : 200, seed, p);
    case 2: return detail::profile_figure(2, ScenarioTag::Trimodal1D, p.n ? p.n : 200, seed, p);
    case 3: return detail::profile_figure(3, ScenarioTag::Contaminated1D, p.n ? p.n : 100, seed, p);
    case 6: {
      SingularityFigure fig;
      fig.n = p.n ? p.n : 20;
      fig.d = p.d;
      fig.queries = p.queries;
      const DataSet data = generate_scenario({ScenarioTag::HighDim, fig.n, seed, fig.d});
      try {
        MahalanobisDepth check(data);
        fig.covariance_singular = false;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SingularCovariance) throw;
        fig.covariance_singular = true;
        fig.covariance_error = e.what();
      }
      const CenterEstimate center = radial_center(data);
      fig.central_scale = center.g_at_center;
      RngStream rng(derive_seed(seed, "queries"));
      fig.g_finite = fig.h_finite = true;
      fig.g_min = fig.h_min = std::numeric_limits<double>::infinity();
      fig.g_max = fig.h_max = -std::numeric_limits<double>::infinity();
      for (std::size_t q = 0; q < fig.queries; ++q) {
        Vector v(static_cast<Eigen::Index>(fig.d));
        for (auto& x : v) x = rng.normal();
        const double g = g_multivariate(data, v);
        double h = std::numeric_limits<double>::quiet_NaN();
        try {
          h = h_multivariate(data, v, center);
        } catch (const Error&) {
        }
        fig.g_finite = fig.g_finite && std::isfinite(g);
        fig.h_finite = fig.h_finite && std::isfinite(h);
        fig.g_min = std::min(fig.g_min, g);
        fig.g_max = std::max(fig.g_max, g);
        fig.h_min = std::min(fig.h_min, h);
        fig.h_max = std::max(fig.h_max, h);
      }
      return fig;
    }
    default: break;
  }

  FieldFigure fig;
  fig.id = id;
  fig.scenario = id == 5 ? ScenarioTag::Skewed : ScenarioTag::Bimodal;
  fig.n = p.n ? p.n : 1000;
  const DataSet data = generate_scenario({fig.scenario, fig.n, seed});
  fig.center = radial_center(data);
  std::vector<DepthMethod> methods;
  auto add = [&](DepthTag t) {
    DepthMethod m;
    m.tag = t;
    m.n_dirs = p.n_dirs;
    m.trim = p.trim;
    m.seed = derive_seed(seed, "projection");
    methods.push_back(m);
  };
  if (id == 7) {
    for (DepthTag t : {DepthTag::Mrd, DepthTag::Mahalanobis, DepthTag::Tukey2D, DepthTag::Spatial,
                       DepthTag::Simplicial2D, DepthTag::Projection}) {
      add(t);
    }
  } else {
    for (DepthTag t : {DepthTag::Mrd, DepthTag::Mahalanobis, DepthTag::RobustMahalanobis}) add(t);
  }
  fig.field = depth_field(data, methods, grid_spec_for(data, p.grid_n, p.margin), fig.center);
  return fig;
}

}  // namespace mrdepth
