#pragma once

// Dataset CSV input and deterministic report serialization. Reals are
// written with 17 significant digits ("%.17g"), NaN as NA and infinities as
// inf / -inf, so equal reports give equal bytes and datasets round-trip
// exactly.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "mrdepth/dataset.hpp"
#include "mrdepth/depth_field.hpp"
#include "mrdepth/error.hpp"
#include "mrdepth/geometry.hpp"
#include "mrdepth/harness.hpp"
#include "mrdepth/radial_core.hpp"

namespace mrdepth {

using Json = nlohmann::ordered_json;

inline std::string format_real(double x) {
  if (std::isnan(x)) return "NA";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// JSON numbers for finite values, null for NaN, "inf"/"-inf" strings.
inline Json json_real(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline Json json_vector(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(json_real(v(i)));
  return arr;
}

// ------------------------------------------------------------- input

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_real(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace detail

inline DataSet parse_dataset(std::istream& in, bool has_header, const std::string& source = "<input>") {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto cells = detail::split_csv_line(line);
    if (rows.empty()) {
      width = cells.size();
    } else if (cells.size() != width) {
      throw Error(ErrorKind::Parse, source + ": line " + std::to_string(line_no) + " has " +
                                        std::to_string(cells.size()) + " fields, expected " + std::to_string(width));
    }
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!detail::parse_real(cells[j], row[j])) {
        throw Error(ErrorKind::Parse, source + ": line " + std::to_string(line_no) + ", column " +
                                          std::to_string(j + 1) + ": '" + cells[j] + "' is not a finite number");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, source + ": no data rows");
  return DataSet::from_rows(rows);
}

inline DataSet read_dataset(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return parse_dataset(in, has_header, path);
}

// ------------------------------------------------------------ output

inline void write_dataset_csv(std::ostream& out, const DataSet& data) {
  for (std::size_t j = 0; j < data.d(); ++j) out << (j ? "," : "") << 'x' << (j + 1);
  out << '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t j = 0; j < data.d(); ++j) {
      out << (j ? "," : "") << format_real(data.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    out << '\n';
  }
}

inline void write_profile_csv(std::ostream& out, const RadialProfile& prof) {
  const auto slopes = finite_difference_slopes(prof);
  out << "v,g,h,d_minus,d_plus,a,slope\n";
  for (std::size_t i = 0; i < prof.entries.size(); ++i) {
    const auto& e = prof.entries[i];
    const double slope = slopes.empty() ? std::nan("") : slopes[i];
    out << format_real(e.v) << ',' << format_real(e.g) << ',' << format_real(e.h) << ',' << format_real(e.d_minus)
        << ',' << format_real(e.d_plus) << ',' << format_real(e.a) << ',' << format_real(slope) << '\n';
  }
}

// Long format, one node per row, x varying fastest.
inline void write_layer_csv(std::ostream& out, const GridField& field, const FieldLayer& layer) {
  out << "ix,iy,x,y," << layer.name << '\n';
  const auto& s = field.spec;
  for (std::size_t iy = 0; iy < s.ny; ++iy) {
    for (std::size_t ix = 0; ix < s.nx; ++ix) {
      out << ix << ',' << iy << ',' << format_real(s.x(ix)) << ',' << format_real(s.y(iy)) << ','
          << format_real(layer.values[iy * s.nx + ix]) << '\n';
    }
  }
}

// Square method matrix: header row and first column carry method names.
inline void write_matrix_csv(std::ostream& out, const std::vector<std::string>& names,
                             const std::vector<std::vector<double>>& m) {
  out << "method";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (std::size_t a = 0; a < names.size(); ++a) {
    out << names[a];
    for (std::size_t b = 0; b < names.size(); ++b) out << ',' << format_real(m[a][b]);
    out << '\n';
  }
}

inline void write_depth_report_csv(std::ostream& out, const RowMatrix& points, const DepthReport& rep) {
  out << "point";
  for (Eigen::Index j = 0; j < points.cols(); ++j) out << ",x" << (j + 1);
  for (const auto& m : rep.methods) out << ',' << m;
  out << '\n';
  for (std::size_t i = 0; i < rep.values.size(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < points.cols(); ++j) out << ',' << format_real(points(static_cast<Eigen::Index>(i), j));
    for (double v : rep.values[i]) out << ',' << format_real(v);
    out << '\n';
  }
}

inline Json to_json(const CenterEstimate& c) {
  Json j;
  j["method"] = std::string(to_string(c.method));
  j["location"] = json_vector(c.location);
  j["g_at_center"] = json_real(c.g_at_center);
  j["iterations"] = c.iterations;
  j["converged"] = c.converged;
  return j;
}

inline Json to_json(const RowMatrix& points, const DepthReport& rep) {
  Json j;
  j["methods"] = rep.methods;
  Json pts = Json::array();
  for (std::size_t i = 0; i < rep.values.size(); ++i) {
    Json p;
    p["index"] = i;
    p["x"] = json_vector(points.row(static_cast<Eigen::Index>(i)).transpose());
    Json depths = Json::object();
    for (std::size_t m = 0; m < rep.methods.size(); ++m) depths[rep.methods[m]] = json_real(rep.values[i][m]);
    p["depths"] = std::move(depths);
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  Json centres = Json::object();
  Json errors = Json::object();
  for (std::size_t m = 0; m < rep.methods.size(); ++m) {
    centres[rep.methods[m]] = json_vector(rep.centres[m]);
    errors[rep.methods[m]] = rep.errors[m].empty() ? Json(nullptr) : Json(rep.errors[m]);
  }
  j["centres"] = std::move(centres);
  j["errors"] = std::move(errors);
  return j;
}

inline Json matrix_json(const std::vector<std::vector<double>>& m) {
  Json arr = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (double x : row) r.push_back(json_real(x));
    arr.push_back(std::move(r));
  }
  return arr;
}

inline Json to_json(const CorrelationReport& r) {
  Json j;
  j["table"] = r.table;
  j["scenario"] = std::string(to_string(r.scenario));
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["simplicial_pool"] = r.simplicial_pool;
  j["methods"] = r.methods;
  j["corr"] = matrix_json(r.corr);
  j["centre_dist"] = matrix_json(r.centre_dist);
  Json centres = Json::object();
  for (std::size_t m = 0; m < r.methods.size(); ++m) centres[r.methods[m]] = json_vector(r.centres[m]);
  j["centres"] = std::move(centres);
  return j;
}

inline Json to_json(const GridSpec& s) {
  Json j;
  j["x_min"] = json_real(s.x_min);
  j["x_max"] = json_real(s.x_max);
  j["y_min"] = json_real(s.y_min);
  j["y_max"] = json_real(s.y_max);
  j["nx"] = s.nx;
  j["ny"] = s.ny;
  return j;
}

inline Json to_json(const SingularityFigure& f) {
  Json j;
  j["d"] = f.d;
  j["n"] = f.n;
  j["covariance_singular"] = f.covariance_singular;
  j["g_finite"] = f.g_finite;
  j["h_finite"] = f.h_finite;
  j["queries"] = f.queries;
  j["central_scale"] = json_real(f.central_scale);
  j["g_range"] = Json::array({json_real(f.g_min), json_real(f.g_max)});
  j["h_range"] = Json::array({json_real(f.h_min), json_real(f.h_max)});
  j["covariance_error"] = f.covariance_error.empty() ? Json(nullptr) : Json(f.covariance_error);
  return j;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

enum class ReportFormat { Csv, Json };

// Writes `text` to `path`, replacing the file.
inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

template <typename Writer>
std::string render(Writer&& w) {
  std::ostringstream os;
  w(os);
  return os.str();
}

inline void write_report(const CorrelationReport& r, const std::string& path, ReportFormat fmt) {
  if (fmt == ReportFormat::Json) {
    write_text(path, dump_json(to_json(r)));
    return;
  }
  // CSV: correlation block, blank line, centre-distance block.
  write_text(path, render([&](std::ostream& os) {
               write_matrix_csv(os, r.methods, r.corr);
               os << '\n';
               write_matrix_csv(os, r.methods, r.centre_dist);
             }));
}

inline void write_report(const RadialProfile& p, const std::string& path, ReportFormat fmt) {
  if (fmt == ReportFormat::Csv) {
    write_text(path, render([&](std::ostream& os) { write_profile_csv(os, p); }));
    return;
  }
  Json j;
  j["center"] = json_real(p.center);
  j["center_scale"] = json_real(p.center_scale);
  j["scale_degenerate"] = p.scale_degenerate;
  Json rows = Json::array();
  for (const auto& e : p.entries) {
    rows.push_back(Json{{"v", json_real(e.v)},
                        {"g", json_real(e.g)},
                        {"h", json_real(e.h)},
                        {"d_minus", json_real(e.d_minus)},
                        {"d_plus", json_real(e.d_plus)},
                        {"a", json_real(e.a)}});
  }
  j["entries"] = std::move(rows);
  write_text(path, dump_json(j));
}

}  // namespace mrdepth
