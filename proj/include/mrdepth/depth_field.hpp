#pragma once

// Method roster, per-point depth reports and rectangular grid fields for
// contour plots. Failures of a whole method (for example a singular
// covariance) become NaN layers carrying the error text instead of aborting.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrdepth/dataset.hpp"
#include "mrdepth/depth.hpp"
#include "mrdepth/error.hpp"
#include "mrdepth/geometry.hpp"

namespace mrdepth {

enum class DepthTag { Mrd, Mahalanobis, RobustMahalanobis, Spatial, Tukey2D, Simplicial2D, Projection };

constexpr std::string_view to_string(DepthTag t) noexcept {
  switch (t) {
    case DepthTag::Mrd: return "mrd";
    case DepthTag::Mahalanobis: return "mahalanobis";
    case DepthTag::RobustMahalanobis: return "robust-mahalanobis";
    case DepthTag::Spatial: return "spatial";
    case DepthTag::Tukey2D: return "tukey2d";
    case DepthTag::Simplicial2D: return "simplicial2d";
    case DepthTag::Projection: return "projection";
  }
  return "unknown";
}

inline constexpr DepthTag kAllDepthTags[] = {DepthTag::Mrd,          DepthTag::Mahalanobis, DepthTag::RobustMahalanobis,
                                             DepthTag::Spatial,      DepthTag::Tukey2D,     DepthTag::Simplicial2D,
                                             DepthTag::Projection};

inline DepthTag parse_depth_tag(std::string_view s) {
  for (DepthTag t : kAllDepthTags) {
    if (to_string(t) == s) return t;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown depth method '" + std::string(s) + "'");
}

struct DepthMethod {
  DepthTag tag = DepthTag::Mrd;
  std::size_t n_dirs = kDefaultProjectionDirections;  // projection
  std::optional<std::uint64_t> seed;                  // projection; required
  double trim = 0.25;                                  // robust-mahalanobis

  bool requires_planar() const noexcept { return tag == DepthTag::Tukey2D || tag == DepthTag::Simplicial2D; }
  bool is_stochastic() const noexcept { return tag == DepthTag::Projection; }
};

using DepthFn = std::function<double(const Vector&)>;

// Binds a method to a dataset. The returned callable refers to `data` (and
// copies what it needs from `center`); keep the dataset alive while using it.
inline DepthFn make_depth_evaluator(const DataSet& data, const DepthMethod& method, const CenterEstimate& center) {
  switch (method.tag) {
    case DepthTag::Mrd: {
      MrdDepth eval(data, center);
      return [eval](const Vector& v) { return eval(v); };
    }
    case DepthTag::Mahalanobis: {
      MahalanobisDepth eval(data);
      return [eval](const Vector& v) { return eval(v); };
    }
    case DepthTag::RobustMahalanobis: {
      RobustMahalanobis eval(data, method.trim);
      return [eval](const Vector& v) { return eval.depth(v); };
    }
    case DepthTag::Spatial:
      return [&data](const Vector& v) { return spatial_depth(data, v); };
    case DepthTag::Tukey2D:
      detail::require_planar(data, "tukey2d");
      return [&data](const Vector& v) { return tukey_depth_2d(data, v); };
    case DepthTag::Simplicial2D:
      detail::require_planar(data, "simplicial2d");
      return [&data](const Vector& v) { return simplicial_depth_2d(data, v); };
    case DepthTag::Projection: {
      if (!method.seed) throw Error(ErrorKind::InvalidArgument, "projection depth requires an explicit seed");
      ProjectionDepth eval(data, method.n_dirs, *method.seed);
      return [eval](const Vector& v) { return eval(v); };
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown depth method");
}

// Depth-weighted average of `points` (rows) with the given nonnegative
// weights.
inline Vector depth_weighted_centre(const RowMatrix& points, const std::vector<double>& depths) {
  if (static_cast<std::size_t>(points.rows()) != depths.size()) {
    throw Error(ErrorKind::LengthMismatch, "one depth per row is required");
  }
  Vector acc = Vector::Zero(points.cols());
  double total = 0.0;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (!(depths[i] >= 0.0)) throw Error(ErrorKind::InvalidArgument, "depth weights must be nonnegative");
    acc += depths[i] * points.row(static_cast<Eigen::Index>(i)).transpose();
    total += depths[i];
  }
  if (!(total > 0.0)) throw Error(ErrorKind::ZeroWeight, "depth weights sum to zero");
  return acc / total;
}

inline Vector depth_weighted_centre(const DataSet& data, const std::vector<double>& depths) {
  return depth_weighted_centre(data.matrix(), depths);
}

struct DepthReport {
  std::vector<std::string> methods;
  // values[i][m]: depth of query i under method m (NaN when the method failed).
  std::vector<std::vector<double>> values;
  // Depth-weighted centre of the query points per method; NaN entries when
  // the method failed or its weights sum to zero.
  std::vector<Vector> centres;
  // Empty when the method succeeded.
  std::vector<std::string> errors;
};

inline DepthReport depth_report(const DataSet& data, const RowMatrix& points, const std::vector<DepthMethod>& methods,
                                const CenterEstimate& center) {
  const auto q = static_cast<std::size_t>(points.rows());
  if (points.cols() != static_cast<Eigen::Index>(data.d())) {
    throw Error(ErrorKind::DimensionMismatch, "query points and data differ in dimension");
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  DepthReport rep;
  rep.values.assign(q, std::vector<double>(methods.size(), nan));
  for (std::size_t m = 0; m < methods.size(); ++m) {
    rep.methods.emplace_back(to_string(methods[m].tag));
    std::vector<double> column(q, nan);
    std::string error;
    try {
      const DepthFn fn = make_depth_evaluator(data, methods[m], center);
      for (std::size_t i = 0; i < q; ++i) column[i] = fn(points.row(static_cast<Eigen::Index>(i)).transpose());
    } catch (const Error& e) {
      error = e.what();
      std::fill(column.begin(), column.end(), nan);
    }
    Vector centre = Vector::Constant(points.cols(), nan);
    if (error.empty()) {
      try {
        centre = depth_weighted_centre(points, column);
      } catch (const Error&) {
        // zero total depth: centre stays NaN
      }
    }
    for (std::size_t i = 0; i < q; ++i) rep.values[i][m] = column[i];
    rep.centres.push_back(std::move(centre));
    rep.errors.push_back(std::move(error));
  }
  return rep;
}

// ------------------------------------------------------------- grids

struct GridSpec {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::size_t nx = 100, ny = 100;

  double x(std::size_t ix) const {
    return nx == 1 ? x_min : x_min + (x_max - x_min) * static_cast<double>(ix) / static_cast<double>(nx - 1);
  }
  double y(std::size_t iy) const {
    return ny == 1 ? y_min : y_min + (y_max - y_min) * static_cast<double>(iy) / static_cast<double>(ny - 1);
  }
};

// Bounding box of the first two coordinates widened by margin * range on
// each side (a zero range is widened by margin instead).
inline GridSpec grid_spec_for(const DataSet& data, std::size_t resolution, double margin = 0.1) {
  if (data.d() != 2) throw Error(ErrorKind::DimensionMismatch, "grid fields need d = 2");
  if (resolution < 1) throw Error(ErrorKind::InvalidArgument, "grid resolution must be >= 1");
  if (!(margin >= 0.0)) throw Error(ErrorKind::InvalidArgument, "margin must be nonnegative");
  GridSpec g;
  const auto& m = data.matrix();
  const double x0 = m.col(0).minCoeff(), x1 = m.col(0).maxCoeff();
  const double y0 = m.col(1).minCoeff(), y1 = m.col(1).maxCoeff();
  const double px = (x1 > x0 ? x1 - x0 : 1.0) * margin;
  const double py = (y1 > y0 ? y1 - y0 : 1.0) * margin;
  g.x_min = x0 - px;
  g.x_max = x1 + px;
  g.y_min = y0 - py;
  g.y_max = y1 + py;
  g.nx = g.ny = resolution;
  return g;
}

struct FieldLayer {
  std::string name;
  std::vector<double> values;  // index iy * nx + ix; NaN marks undefined nodes
  std::string error;           // set when the whole layer failed
};

struct GridField {
  GridSpec spec;
  std::vector<FieldLayer> layers;

  const FieldLayer* layer(std::string_view name) const {
    for (const auto& l : layers) {
      if (l.name == name) return &l;
    }
    return nullptr;
  }
};

// Evaluates G, H (relative to `center`) and every requested depth at every
// grid node. Per-node failures become NaN; per-method failures NaN layers.
inline GridField depth_field(const DataSet& data, const std::vector<DepthMethod>& methods, const GridSpec& spec,
                             const CenterEstimate& center) {
  if (data.d() != 2) throw Error(ErrorKind::DimensionMismatch, "grid fields need d = 2");
  if (spec.nx < 1 || spec.ny < 1) throw Error(ErrorKind::InvalidArgument, "grid needs at least one node per axis");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t nodes = spec.nx * spec.ny;
  std::vector<Vector> grid;
  grid.reserve(nodes);
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    for (std::size_t ix = 0; ix < spec.nx; ++ix) grid.push_back(make_point({spec.x(ix), spec.y(iy)}));
  }

  GridField field;
  field.spec = spec;

  auto fill = [&](std::string name, const std::function<DepthFn()>& make) {
    FieldLayer layer{std::move(name), std::vector<double>(nodes, nan), {}};
    try {
      const DepthFn fn = make();
      for (std::size_t i = 0; i < nodes; ++i) {
        try {
          layer.values[i] = fn(grid[i]);
        } catch (const Error&) {
          layer.values[i] = nan;
        }
      }
    } catch (const Error& e) {
      layer.error = e.what();
    }
    field.layers.push_back(std::move(layer));
  };

  fill("g", [&]() -> DepthFn { return [&data](const Vector& v) { return g_multivariate(data, v); }; });
  fill("h", [&]() -> DepthFn {
    const double scale = central_scale(data, center);
    if (!(scale > 0.0)) throw Error(ErrorKind::DegenerateScale, "median radius at the center is zero");
    return [&data, scale](const Vector& v) { return g_multivariate(data, v) / scale; };
  });
  for (const auto& m : methods) {
    fill(std::string(to_string(m.tag)), [&]() { return make_depth_evaluator(data, m, center); });
  }
  return field;
}

}  // namespace mrdepth
