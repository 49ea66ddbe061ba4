#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "centrade/dataset.hpp"
#include "centrade/model.hpp"
#include "centrade/oracle.hpp"
#include "centrade/report.hpp"

namespace {

using namespace centrade;

struct Options {
  std::string model_name = "grm";
  double k = 30.0;
  bool k_explicit = false;
  std::string scale_csv;
  std::size_t n = 5;
  std::string format = "text";
  double eps = kDefaultEps;
  double resolution = kDefaultResolution;
  std::string input = "-";
};

ShapeKind shape_of(const Options& opts) {
  const auto shape = shape_from_name(opts.model_name);
  if (!shape) {
    fail(Errc::InvalidArgument, "unknown model '" + opts.model_name +
                                    "' (expected classic|grm|triangular|trapezoidal)");
  }
  return *shape;
}

// The classic shape has no overlap, so an untouched --k default must not
// trip the overlap check.
double overlap_of(const Options& opts, ShapeKind shape) {
  if (shape == ShapeKind::RectangularClassic && !opts.k_explicit) return 0.0;
  return opts.k / 100.0;
}

std::optional<GradeScale> scale_of(const Options& opts) {
  if (opts.scale_csv.empty()) return std::nullopt;
  std::vector<std::string> labels;
  std::string label;
  std::istringstream is(opts.scale_csv);
  while (std::getline(is, label, ',')) labels.push_back(label);
  return GradeScale(std::move(labels));
}

std::string read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) fail(Errc::ParseError, "cannot open '" + path + "'");
    buffer << file.rdbuf();
  }
  return buffer.str();
}

DatasetFormat sniff_format(std::string_view text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    return c == '{' ? DatasetFormat::Json : DatasetFormat::Csv;
  }
  return DatasetFormat::Csv;
}

ReportFormat report_format(const Options& opts) {
  if (opts.format == "text") return ReportFormat::Text;
  if (opts.format == "json") return ReportFormat::Json;
  fail(Errc::InvalidArgument, "unknown format '" + opts.format + "' (expected text|json)");
}

struct Analysis {
  ModelSpec model;
  std::vector<Group> groups;
  std::vector<GroupReport> reports;
};

Analysis analyze(const Options& opts) {
  const ShapeKind shape = shape_of(opts);
  const std::string text = read_input(opts.input);
  const auto datasets = parse_dataset(text, sniff_format(text), scale_of(opts));

  Analysis a{make_model(shape, datasets.front().scale.size(), overlap_of(opts, shape)), {}, {}};
  for (const GradeDataset& ds : datasets) {
    if (shape == ShapeKind::RectangularClassic && has_boundary_mass(ds)) {
      fail(Errc::OverlapNotAllowed,
           "group '" + ds.group_id +
               "' has boundary counts, but the classic model leaves no overlap to place them in");
    }
    GradeDistribution dist = normalize(ds);
    const Centroid c = centroid(dist, a.model);
    a.reports.push_back(GroupReport{ds.group_id, c, gpa(dist)});
    a.groups.push_back(Group{ds.group_id, std::move(dist)});
  }
  return a;
}

int run_report(const Options& opts) {
  const Analysis a = analyze(opts);
  std::cout << render_report(a.reports, std::nullopt, a.model, report_format(opts));
  return 0;
}

int run_compare(const Options& opts) {
  const Analysis a = analyze(opts);
  const Verdict verdict = compare(a.groups, a.model, opts.eps);
  std::cout << render_report(a.reports, verdict, a.model, report_format(opts));
  return 0;
}

int run_coeffs(const Options& opts) {
  const ShapeKind shape = shape_of(opts);
  const auto scale = scale_of(opts);
  const std::size_t n = scale ? scale->size() : opts.n;
  const ModelSpec model = make_model(shape, n, overlap_of(opts, shape));
  std::cout << render_coefficients(model, report_format(opts));
  return 0;
}

int run_verify(const Options& opts) {
  const ShapeKind shape = shape_of(opts);
  if (shape != ShapeKind::RectangularClassic && shape != ShapeKind::GeneralizedRectangular) {
    fail(Errc::UnsupportedShape,
         "verify needs a bar-graph geometry; only classic and grm have one");
  }
  const Analysis a = analyze(opts);
  const bool closed_vs_closed = shape == ShapeKind::GeneralizedRectangular;
  const double tolerance = closed_vs_closed ? 1e-12 : 5.0 * opts.resolution;

  std::ostringstream os;
  os << "model: " << shape_name(shape) << "  n=" << a.model.n;
  if (!closed_vs_closed) os << "  resolution=" << opts.resolution;
  os << "\n";
  double max_deviation = 0.0;
  for (std::size_t i = 0; i < a.groups.size(); ++i) {
    const auto regions = layout(a.model, a.groups[i].dist);
    const Centroid oracle = closed_vs_closed ? particle_centroid(regions)
                                             : integral_centroid(regions, opts.resolution);
    const Centroid closed = a.reports[i].centroid;
    const double deviation =
        std::max(std::abs(oracle.x_c - closed.x_c), std::abs(oracle.y_c - closed.y_c));
    max_deviation = std::max(max_deviation, deviation);
    os << std::fixed << std::setprecision(6);
    os << "group " << a.groups[i].id << ": closed=(" << closed.x_c << ", " << closed.y_c
       << ")  oracle=(" << oracle.x_c << ", " << oracle.y_c << ")  deviation="
       << std::scientific << std::setprecision(3) << deviation << "\n";
  }
  const bool ok = max_deviation <= tolerance;
  os << std::scientific << std::setprecision(3);
  os << "max deviation: " << max_deviation << "  (tolerance: " << tolerance << ")  "
     << (ok ? "OK" : "FAIL") << "\n";
  std::cout << os.str();
  return ok ? 0 : 1;
}

void add_model_flags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--model", opts.model_name, "Model shape: classic|grm|triangular|trapezoidal")
      ->capture_default_str();
  cmd->add_option("--k", opts.k, "Overlap percent between adjacent figures, in [0, 50)")
      ->capture_default_str();
}

void add_input_flags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--scale", opts.scale_csv,
                  "Comma-separated grade labels, worst first (e.g. F,D,C,B,A)");
  cmd->add_option("input", opts.input, "Dataset file (CSV or JSON), or - for stdin")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Options opts;
  CLI::App app{"Centroid-based grade distribution analytics"};
  app.require_subcommand(1);

  CLI::App* report_cmd = app.add_subcommand("report", "Per-group centroid and GPA report");
  add_model_flags(report_cmd, opts);
  add_input_flags(report_cmd, opts);
  report_cmd->add_option("--format", opts.format, "Output format: text|json")->capture_default_str();

  CLI::App* compare_cmd = app.add_subcommand("compare", "Rank groups by the centroid criterion");
  add_model_flags(compare_cmd, opts);
  add_input_flags(compare_cmd, opts);
  compare_cmd->add_option("--format", opts.format, "Output format: text|json")->capture_default_str();
  compare_cmd->add_option("--eps", opts.eps, "Tie tolerance on centroid coordinates")
      ->capture_default_str();

  CLI::App* coeffs_cmd = app.add_subcommand("coeffs", "Print the derived model coefficients");
  add_model_flags(coeffs_cmd, opts);
  coeffs_cmd->add_option("--n", opts.n, "Grade count (ignored when --scale is given)")
      ->capture_default_str();
  coeffs_cmd->add_option("--scale", opts.scale_csv,
                         "Comma-separated grade labels, worst first");
  coeffs_cmd->add_option("--format", opts.format, "Output format: text|json")->capture_default_str();

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Cross-check closed-form centroids against the geometry");
  add_model_flags(verify_cmd, opts);
  add_input_flags(verify_cmd, opts);
  verify_cmd->add_option("--resolution", opts.resolution, "Integration grid step (classic model)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version keep 0; usage errors are 2
  }
  opts.k_explicit = app.get_subcommands().front()->count("--k") > 0;

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (cmd == report_cmd) return run_report(opts);
    if (cmd == compare_cmd) return run_compare(opts);
    if (cmd == coeffs_cmd) return run_coeffs(opts);
    return run_verify(opts);
  } catch (const centrade::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
