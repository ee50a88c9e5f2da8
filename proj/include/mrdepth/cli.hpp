#pragma once

// Command-line front end. `run` parses arguments, dispatches the verb and
// returns the process exit status: 0 on success, 1 for input errors (bad
// flags, unreadable or malformed data, missing seed) and 2 for numeric
// failures.

#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrdepth/io.hpp"
#include "mrdepth/mrdepth.hpp"

namespace mrdepth::cli {

inline constexpr const char* kToolName = "mrdepth";

struct Options {
  std::string input;
  std::string points;
  std::vector<std::string> methods;
  std::string center = "radial";
  std::size_t grid_n = 100;
  double margin = 0.1;
  std::size_t n = 0;
  std::size_t d = 50;
  std::optional<std::uint64_t> seed;
  std::string output;
  int table = 0;
  int id = 0;
  double trim = 0.25;
  std::size_t n_dirs = kDefaultProjectionDirections;
  bool has_header = false;
  bool strict = false;
  std::size_t simplicial_pool = 0;
  std::size_t profile_points = 401;
};

namespace detail {

// Records the verb and every flag of the subcommand (given or defaulted).
inline Json run_metadata(const CLI::App& sub, const Options& o) {
  Json flags = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    const bool is_flag = opt->get_expected_max() == 0;
    if (is_flag) {
      flags[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() > 1) {
        flags[name] = res;
      } else {
        flags[name] = res.empty() ? Json(nullptr) : Json(res.back());
      }
    } else {
      const std::string def = opt->get_default_str();
      flags[name] = def.empty() || name == "seed" ? Json(nullptr) : Json(def);
    }
  }
  Json meta;
  meta["tool"] = kToolName;
  meta["verb"] = sub.get_name();
  meta["flags"] = std::move(flags);
  meta["seed"] = o.seed ? Json(*o.seed) : Json(nullptr);
  return meta;
}

inline std::vector<DepthMethod> parse_methods(const Options& o) {
  std::vector<std::string> names = o.methods.empty() ? std::vector<std::string>{"mrd"} : o.methods;
  std::vector<DepthMethod> out;
  for (const auto& name : names) {
    DepthMethod m;
    m.tag = parse_depth_tag(name);
    m.n_dirs = o.n_dirs;
    m.trim = o.trim;
    if (m.is_stochastic()) {
      if (!o.seed) throw Error(ErrorKind::InvalidArgument, "method '" + name + "' is stochastic; pass --seed");
      m.seed = derive_seed(*o.seed, "projection");
    }
    out.push_back(m);
  }
  return out;
}

inline CenterEstimate center_for(const DataSet& data, const std::string& which) {
  if (which == "radial") return radial_center(data);
  if (which == "gmedian") return geometric_median(data);
  throw Error(ErrorKind::InvalidArgument, "--center must be radial or gmedian");
}

inline void merge_into(Json& target, const Json& source) {
  for (const auto& [key, value] : source.items()) target[key] = value;
}

inline void emit_json(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << dump_json(j);
  } else {
    write_text(path, dump_json(j));
  }
}

class Writer {
 public:
  Writer(std::string prefix, std::ostream& out) : prefix_(std::move(prefix)), out_(out) {}

  void file(const std::string& suffix, const std::string& text) {
    const std::string path = prefix_ + suffix;
    write_text(path, text);
    out_ << path << '\n';
  }

 private:
  std::string prefix_;
  std::ostream& out_;
};

inline std::string prefix_or(const Options& o, const std::string& fallback) {
  return o.output.empty() ? fallback : o.output;
}

inline std::size_t argmin_index(const RadialProfile& p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.entries.size(); ++i) {
    if (p.entries[i].g < p.entries[best].g) best = i;
  }
  return best;
}

// ---------------------------------------------------------------- verbs

inline int cmd_depth(const Options& o, Json meta, std::ostream& out, std::ostream& err) {
  const DataSet data = read_dataset(o.input, o.has_header);
  const DataSet points = o.points.empty() ? data : read_dataset(o.points, o.has_header);
  const auto methods = parse_methods(o);
  const CenterEstimate center = center_for(data, o.center);
  const DepthReport rep = depth_report(data, points.matrix(), methods, center);

  Json j;
  j["meta"] = std::move(meta);
  j["center"] = to_json(center);
  merge_into(j, to_json(points.matrix(), rep));
  emit_json(j, o.output, out);

  if (o.strict) {
    for (std::size_t m = 0; m < rep.errors.size(); ++m) {
      if (!rep.errors[m].empty()) {
        err << kToolName << ": " << rep.methods[m] << ": " << rep.errors[m] << '\n';
        return 2;
      }
    }
  }
  return 0;
}

inline int cmd_profile(const Options& o, Json meta, std::ostream& out) {
  const DataSet data = read_dataset(o.input, o.has_header);
  if (data.d() != 1) throw Error(ErrorKind::DimensionMismatch, "profile needs univariate data (one column)");
  std::vector<double> xs(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) xs[i] = data.matrix()(static_cast<Eigen::Index>(i), 0);
  const Sample1D sample(xs);
  const CenterEstimate center = center_for(data, o.center);
  const RadialProfile prof = profile(sample, profile_grid(sample, o.grid_n), center.location(0));

  Writer w(prefix_or(o, "profile"), out);
  w.file(".csv", render([&](std::ostream& os) { write_profile_csv(os, prof); }));
  Json j;
  j["meta"] = std::move(meta);
  j["center"] = to_json(center);
  j["center_scale"] = json_real(prof.center_scale);
  j["scale_degenerate"] = prof.scale_degenerate;
  j["argmin_v"] = json_real(prof.entries[argmin_index(prof)].v);
  w.file(".json", dump_json(j));
  return 0;
}

inline int cmd_gmedian(const Options& o, Json meta, std::ostream& out) {
  const DataSet data = read_dataset(o.input, o.has_header);
  const CenterEstimate radial = radial_center(data);
  const CenterEstimate gm = geometric_median(data);
  Json j;
  j["meta"] = std::move(meta);
  j["radial_center"] = to_json(radial);
  j["geometric_median"] = to_json(gm);
  j["geometric_median"]["g_at_location"] = json_real(g_multivariate(data, gm.location));
  j["coordinate_median"] = json_vector(coordinate_median(data));
  j["distance"] = json_real((radial.location - gm.location).norm());
  emit_json(j, o.output, out);
  return 0;
}

inline void write_field(Writer& w, const GridField& field) {
  for (const auto& layer : field.layers) {
    w.file("_" + layer.name + ".csv", render([&](std::ostream& os) { write_layer_csv(os, field, layer); }));
  }
}

inline Json layer_errors(const GridField& field) {
  Json errors = Json::object();
  for (const auto& layer : field.layers) errors[layer.name] = layer.error.empty() ? Json(nullptr) : Json(layer.error);
  return errors;
}

inline int cmd_contour(const Options& o, Json meta, std::ostream& out) {
  const DataSet data = read_dataset(o.input, o.has_header);
  if (data.d() != 2) throw Error(ErrorKind::DimensionMismatch, "contour needs bivariate data (two columns)");
  if (o.grid_n < 1) throw Error(ErrorKind::InvalidArgument, "--grid-n must be positive");
  const auto methods = parse_methods(o);
  const CenterEstimate center = center_for(data, o.center);
  const GridField field = depth_field(data, methods, grid_spec_for(data, o.grid_n, o.margin), center);

  Writer w(prefix_or(o, "contour"), out);
  write_field(w, field);
  Json j;
  j["meta"] = std::move(meta);
  j["grid"] = to_json(field.spec);
  j["center"] = to_json(center);
  j["layer_errors"] = layer_errors(field);
  w.file("_meta.json", dump_json(j));
  return 0;
}

inline int cmd_reproduce(const Options& o, Json meta, std::ostream& out) {
  if (o.table < 1 || o.table > 3) throw Error(ErrorKind::InvalidArgument, "--table must be 1, 2 or 3");
  if (!o.seed) throw Error(ErrorKind::InvalidArgument, "reproduce is stochastic; pass --seed");
  TableOptions opts;
  opts.n_dirs = o.n_dirs;
  opts.simplicial_pool = o.simplicial_pool;
  const CorrelationReport rep = reproduce_table(o.table, o.n ? o.n : 3000, *o.seed, opts);

  Writer w(prefix_or(o, "table" + std::to_string(o.table)), out);
  w.file("_corr.csv", render([&](std::ostream& os) { write_matrix_csv(os, rep.methods, rep.corr); }));
  w.file("_centre.csv", render([&](std::ostream& os) { write_matrix_csv(os, rep.methods, rep.centre_dist); }));
  Json j;
  j["meta"] = std::move(meta);
  merge_into(j, to_json(rep));
  w.file(".json", dump_json(j));
  return 0;
}

inline int cmd_figure(const Options& o, Json meta, std::ostream& out) {
  FigureParams p;
  p.n = o.n;
  p.d = o.d;
  p.seed = o.seed;
  p.grid_n = o.grid_n;
  p.margin = o.margin;
  p.profile_points = o.profile_points;
  p.n_dirs = o.n_dirs;
  p.trim = o.trim;
  const FigureReport report = reproduce_figure(o.id, p);

  Writer w(prefix_or(o, "figure" + std::to_string(o.id)), out);
  Json j;
  j["meta"] = std::move(meta);
  j["id"] = o.id;
  if (const auto* f = std::get_if<ProfileFigure>(&report)) {
    w.file("_profile.csv", render([&](std::ostream& os) { write_profile_csv(os, f->profile); }));
    j["scenario"] = std::string(to_string(f->scenario));
    j["sample_size"] = f->sample_size;
    j["center"] = json_real(f->profile.center);
    j["center_scale"] = json_real(f->profile.center_scale);
    j["argmin_v"] = json_real(f->profile.entries[argmin_index(f->profile)].v);
  } else if (const auto* f = std::get_if<FieldFigure>(&report)) {
    write_field(w, f->field);
    j["scenario"] = std::string(to_string(f->scenario));
    j["n"] = f->n;
    j["grid"] = to_json(f->field.spec);
    j["center"] = to_json(f->center);
    j["layer_errors"] = layer_errors(f->field);
  } else {
    merge_into(j, to_json(std::get<SingularityFigure>(report)));
  }
  w.file(".json", dump_json(j));
  return 0;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Median-radius depth toolkit", kToolName};
  app.require_subcommand(1, 1);
  app.option_defaults()->always_capture_default();

  Options o;
  std::uint64_t seed_value = 0;

  auto add_input = [&](CLI::App* s) {
    s->add_option("--input", o.input, "CSV dataset, one observation per row")->required();
    s->add_flag("--has-header", o.has_header, "skip the first non-blank line of CSV inputs");
  };
  auto add_methods = [&](CLI::App* s) {
    s->add_option("--method", o.methods,
                  "depth method (repeatable): mrd, mahalanobis, robust-mahalanobis, spatial, tukey2d, simplicial2d, "
                  "projection")
        ->default_str("mrd");
    s->add_option("--center", o.center, "reference center: radial or gmedian")
        ->check(CLI::IsMember({"radial", "gmedian"}));
    s->add_option("--trim", o.trim, "trimming fraction for robust-mahalanobis")->check(CLI::Range(0.0, 0.99));
    s->add_option("--n-dirs", o.n_dirs, "projection directions")->check(CLI::PositiveNumber);
  };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", seed_value, "random seed (required for stochastic work)"); };
  auto add_output = [&](CLI::App* s, const char* what) { s->add_option("--output", o.output, what); };

  CLI::App* depth = app.add_subcommand("depth", "depth of query points under one or more methods");
  add_input(depth);
  depth->add_option("--points", o.points, "CSV of query points (default: the input rows)");
  add_methods(depth);
  add_seed(depth);
  depth->add_flag("--strict", o.strict, "exit 2 when any method fails");
  add_output(depth, "JSON file (default: standard output)");

  CLI::App* prof = app.add_subcommand("profile", "univariate G/H profile with subgradient bounds");
  add_input(prof);
  prof->add_option("--center", o.center, "reference center: radial or gmedian")
      ->check(CLI::IsMember({"radial", "gmedian"}));
  prof->add_option("--grid-n", o.grid_n, "grid points over [min - 1, max + 1]")->check(CLI::Range(2, 10000000));
  add_output(prof, "output prefix (default: profile)");

  CLI::App* gmed = app.add_subcommand("gmedian", "radial center and geometric median");
  add_input(gmed);
  add_output(gmed, "JSON file (default: standard output)");

  CLI::App* contour = app.add_subcommand("contour", "G, H and depth fields on a regular grid (d = 2)");
  add_input(contour);
  add_methods(contour);
  contour->add_option("--grid-n", o.grid_n, "nodes per axis")->check(CLI::PositiveNumber);
  contour->add_option("--margin", o.margin, "grid margin as a fraction of the data range")
      ->check(CLI::NonNegativeNumber);
  add_seed(contour);
  add_output(contour, "output prefix (default: contour)");

  CLI::App* repro = app.add_subcommand("reproduce", "rank-correlation table for a simulated scenario");
  repro->add_option("--table", o.table, "table number (1 gaussian, 2 skewed, 3 bimodal)")->required();
  repro->add_option("--n", o.n, "sample size")->default_str("3000");
  add_seed(repro);
  repro->add_option("--n-dirs", o.n_dirs, "projection directions")->check(CLI::PositiveNumber);
  repro->add_option("--simplicial-pool", o.simplicial_pool, "rows in the simplicial triangle pool (0: all)");
  add_output(repro, "output prefix (default: table<k>)");

  CLI::App* fig = app.add_subcommand("figure", "data behind a figure");
  fig->add_option("--id", o.id, "figure number 1..7")->required()->check(CLI::Range(1, 7));
  fig->add_option("--n", o.n, "sample size (0: figure default)");
  fig->add_option("--d", o.d, "dimension (figure 6)")->check(CLI::PositiveNumber);
  add_seed(fig);
  fig->add_option("--grid-n", o.grid_n, "nodes per axis (figures 4, 5, 7)")->check(CLI::PositiveNumber);
  fig->add_option("--margin", o.margin, "grid margin fraction")->check(CLI::NonNegativeNumber);
  fig->add_option("--profile-points", o.profile_points, "profile grid size (figures 1-3)")
      ->check(CLI::Range(2, 10000000));
  fig->add_option("--n-dirs", o.n_dirs, "projection directions")->check(CLI::PositiveNumber);
  fig->add_option("--trim", o.trim, "robust-mahalanobis trimming fraction")->check(CLI::Range(0.0, 0.99));
  add_output(fig, "output prefix (default: figure<id>)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (const CLI::Option* s = sub->get_option_no_throw("--seed"); s && s->count() > 0) o.seed = seed_value;

  try {
    Json meta = detail::run_metadata(*sub, o);
    const std::string verb = sub->get_name();
    if (verb == "depth") return detail::cmd_depth(o, std::move(meta), out, err);
    if (verb == "profile") return detail::cmd_profile(o, std::move(meta), out);
    if (verb == "gmedian") return detail::cmd_gmedian(o, std::move(meta), out);
    if (verb == "contour") return detail::cmd_contour(o, std::move(meta), out);
    if (verb == "reproduce") return detail::cmd_reproduce(o, std::move(meta), out);
    return detail::cmd_figure(o, std::move(meta), out);
  } catch (const Error& e) {
    err << kToolName << ": " << e.what() << '\n';
    return e.is_input_error() ? 1 : 2;
  } catch (const std::exception& e) {
    err << kToolName << ": " << e.what() << '\n';
    return 2;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace mrdepth::cli
