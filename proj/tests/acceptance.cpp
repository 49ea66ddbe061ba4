// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exits non-zero if any criterion fails.
//
//   acceptance [path-to-cli-binary]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#include "centrade/dataset.hpp"
#include "centrade/model.hpp"
#include "centrade/oracle.hpp"
#include "centrade/report.hpp"

using namespace centrade;
namespace fs = std::filesystem;

namespace {

struct Checker {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) notes.push_back(what);
  }

  void criterion(int number, const std::string& title, const std::function<void()>& body) {
    notes.clear();
    try {
      body();
    } catch (const std::exception& e) {
      notes.push_back(std::string("exception: ") + e.what());
    }
    if (notes.empty()) {
      std::printf("[PASS] %d. %s\n", number, title.c_str());
    } else {
      ++failures;
      std::printf("[FAIL] %d. %s\n", number, title.c_str());
      for (const std::string& note : notes) std::printf("       - %s\n", note.c_str());
    }
    std::fflush(stdout);
  }
};

constexpr const char* kTable1Csv =
    "#scale:F,D,C,B,A\n"
    "group,grade,count\n"
    "ClassI,C,10\n"
    "ClassI,A,50\n"
    "ClassII,B,20\n"
    "ClassII,A,40\n";

GradeScale letters() { return GradeScale({"F", "D", "C", "B", "A"}); }

GradeScale numbered(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("g" + std::to_string(i));
  return GradeScale(std::move(labels));
}

GradeDistribution random_distribution(std::mt19937_64& rng, const GradeScale& scale) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> y(scale.size());
  double sum = 0.0;
  for (double& v : y) {
    v = draw(rng);
    sum += v;
  }
  for (double& v : y) v /= sum;
  return GradeDistribution(scale, std::move(y));
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string format_mismatch(const std::string& name, double got, double want) {
  std::ostringstream os;
  os.precision(17);
  os << name << " = " << got << ", expected " << want;
  return os.str();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& cli, const std::string& args) {
  const std::string command = cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, got);
  const int status = pclose(pipe);
  return CliResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  Checker ck;

  // ---------------------------------------------------------------- 1 ----
  ck.criterion(1, "Table 1 reproduction: grm compare ranks Class I via the high-half rule", [&] {
    const auto start = std::chrono::steady_clock::now();

    const auto datasets = parse_dataset(kTable1Csv, DatasetFormat::Csv);
    const ModelSpec grm = make_model(ShapeKind::GeneralizedRectangular, 5, 0.3);
    std::vector<Group> groups;
    for (const auto& ds : datasets) groups.push_back({ds.group_id, normalize(ds)});

    const Centroid c1 = centroid(groups[0].dist, grm);
    const Centroid c2 = centroid(groups[1].dist, grm);
    const double tol = 1e-9;
    ck.expect(close(c1.x_c, 46.0 / 15.0, tol), format_mismatch("x_c(I)", c1.x_c, 46.0 / 15.0));
    ck.expect(close(c2.x_c, 46.0 / 15.0, tol), format_mismatch("x_c(II)", c2.x_c, 46.0 / 15.0));
    ck.expect(close(c1.y_c, 13.0 / 36.0, tol), format_mismatch("y_c(I)", c1.y_c, 13.0 / 36.0));
    ck.expect(close(c2.y_c, 5.0 / 18.0, tol), format_mismatch("y_c(II)", c2.y_c, 5.0 / 18.0));
    ck.expect(c1.y_c > c2.y_c, "y_c(I) must exceed y_c(II)");
    ck.expect(close(gpa(groups[0].dist), 11.0 / 3.0, tol),
              format_mismatch("GPA(I)", gpa(groups[0].dist), 11.0 / 3.0));
    ck.expect(close(gpa(groups[1].dist), 11.0 / 3.0, tol),
              format_mismatch("GPA(II)", gpa(groups[1].dist), 11.0 / 3.0));

    const Verdict v = compare(groups, grm);
    ck.expect(v.ranking.size() == 2 && v.ranking[0] == std::vector<std::string>{"ClassI"} &&
                  v.ranking[1] == std::vector<std::string>{"ClassII"},
              "ranking must be ClassI, then ClassII");
    ck.expect(v.decisions.size() == 1 && v.decisions[0].rule == CompareRule::TieHighHalfYcHigher,
              "the deciding rule must be the high-half y_c rule");

    if (!cli.empty()) {
      const fs::path dir = fs::temp_directory_path() / ("centrade-acc-" + std::to_string(getpid()));
      fs::create_directories(dir);
      const fs::path csv = dir / "table1.csv";
      std::ofstream(csv, std::ios::binary) << kTable1Csv;
      const CliResult r = run_cli(cli, "compare --model grm --format json " + csv.string());
      ck.expect(r.exit_code == 0, "CLI compare must exit 0");
      try {
        const auto j = nlohmann::json::parse(r.out);
        ck.expect(j.at("ranking").at(0) == nlohmann::json::array({"ClassI"}),
                  "CLI ranking[0] must be [ClassI]");
        ck.expect(j.at("decisions").at(0).at("rule") == "tie_high_half_yc_higher",
                  "CLI rule must be tie_high_half_yc_higher");
      } catch (const std::exception& e) {
        ck.expect(false, std::string("CLI JSON output unusable: ") + e.what());
      }
    } else {
      ck.expect(false, "no CLI binary path given");
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ck.expect(elapsed < 1.0, "runtime must stay under 1 s");
  });

  // ---------------------------------------------------------------- 2 ----
  ck.criterion(2, "Extreme points, grm: (1.9, 0.1), (3.3, 0.5), (0.5, 0.5)", [&] {
    const ExtremePoints p = extremes(make_model(ShapeKind::GeneralizedRectangular, 5, 0.3));
    const double tol = 1e-12;
    ck.expect(close(p.min.x_c, 1.9, tol), format_mismatch("min.x_c", p.min.x_c, 1.9));
    ck.expect(close(p.min.y_c, 0.1, tol), format_mismatch("min.y_c", p.min.y_c, 0.1));
    ck.expect(close(p.ideal.x_c, 3.3, tol), format_mismatch("ideal.x_c", p.ideal.x_c, 3.3));
    ck.expect(close(p.ideal.y_c, 0.5, tol), format_mismatch("ideal.y_c", p.ideal.y_c, 0.5));
    ck.expect(close(p.worst.x_c, 0.5, tol), format_mismatch("worst.x_c", p.worst.x_c, 0.5));
    ck.expect(close(p.worst.y_c, 0.5, tol), format_mismatch("worst.y_c", p.worst.y_c, 0.5));
  });

  // ---------------------------------------------------------------- 3 ----
  ck.criterion(3, "Extreme points, classic: (2.5, 0.1), (4.5, 0.5), (0.5, 0.5)", [&] {
    const ExtremePoints p = extremes(make_model(ShapeKind::RectangularClassic, 5, 0.0));
    const double tol = 1e-12;
    ck.expect(close(p.min.x_c, 2.5, tol), format_mismatch("min.x_c", p.min.x_c, 2.5));
    ck.expect(close(p.min.y_c, 0.1, tol), format_mismatch("min.y_c", p.min.y_c, 0.1));
    ck.expect(close(p.ideal.x_c, 4.5, tol), format_mismatch("ideal.x_c", p.ideal.x_c, 4.5));
    ck.expect(close(p.ideal.y_c, 0.5, tol), format_mismatch("ideal.y_c", p.ideal.y_c, 0.5));
    ck.expect(close(p.worst.x_c, 0.5, tol), format_mismatch("worst.x_c", p.worst.x_c, 0.5));
    ck.expect(close(p.worst.y_c, 0.5, tol), format_mismatch("worst.y_c", p.worst.y_c, 0.5));
  });

  // ---------------------------------------------------------------- 4 ----
  ck.criterion(4, "Coefficient table at n=5, k=30: alpha, beta, m, threshold and gamma per shape", [&] {
    const double gammas[] = {0.5, 0.2, 3.0 / 7.0};
    const ShapeKind shapes[] = {ShapeKind::GeneralizedRectangular, ShapeKind::Triangular,
                                ShapeKind::Trapezoidal};
    for (int i = 0; i < 3; ++i) {
      const ModelSpec model = make_model(shapes[i], 5, 30.0 / 100.0);
      const std::string name = shape_name(shapes[i]);
      ck.expect(model.alpha == 0.7, name + ": " + format_mismatch("alpha", model.alpha, 0.7));
      ck.expect(model.beta == 0.2, name + ": " + format_mismatch("beta", model.beta, 0.2));
      ck.expect(model.m == 3.8, name + ": " + format_mismatch("m", model.m, 3.8));
      ck.expect(model.threshold() == 1.9,
                name + ": " + format_mismatch("threshold", model.threshold(), 1.9));
      ck.expect(model.gamma == gammas[i],
                name + ": " + format_mismatch("gamma", model.gamma, gammas[i]));
    }
  });

  // ---------------------------------------------------------------- 5 ----
  ck.criterion(5, "Oracle equivalence on 1,000 random distributions (n = 5)", [&] {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20250811);
    const GradeScale scale = letters();
    const ModelSpec grm = make_model(ShapeKind::GeneralizedRectangular, 5, 0.3);
    const ModelSpec classic = make_model(ShapeKind::RectangularClassic, 5, 0.0);
    const double resolution = 1e-3;

    double worst_particle = 0.0;
    double worst_integral = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const GradeDistribution d = random_distribution(rng, scale);

      const Centroid p = particle_centroid(layout(grm, d));
      const Centroid cp = centroid(d, grm);
      worst_particle = std::max(worst_particle,
                                std::max(std::abs(p.x_c - cp.x_c), std::abs(p.y_c - cp.y_c)));

      const Centroid g = integral_centroid(layout(classic, d), resolution);
      const Centroid cg = centroid(d, classic);
      worst_integral = std::max(worst_integral,
                                std::max(std::abs(g.x_c - cg.x_c), std::abs(g.y_c - cg.y_c)));
    }
    ck.expect(worst_particle <= 1e-12,
              format_mismatch("max particle deviation", worst_particle, 0.0) + " (tol 1e-12)");
    ck.expect(worst_integral <= 5.0 * resolution,
              format_mismatch("max integral deviation", worst_integral, 0.0) + " (tol 5e-3)");

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ck.expect(elapsed < 30.0, "runtime must stay under 30 s, was " + std::to_string(elapsed));
  });

  // ---------------------------------------------------------------- 6 ----
  ck.criterion(6, "Property suite: sum-of-squares bound, threshold midpoint, GPA order, shape invariance", [&] {
    std::mt19937_64 rng(424242);

    // (a) sum(y_i^2) >= 1/n, equality only at the uniform distribution.
    for (std::size_t n : {2, 5, 7}) {
      const GradeScale scale = numbered(n);
      const auto uniform = sum_squares_lower_bound(GradeDistribution::uniform(scale));
      ck.expect(uniform.is_tight && close(uniform.value, 1.0 / double(n), 1e-12),
                "uniform n=" + std::to_string(n) + " must attain 1/n");
      const int trials = n == 5 ? 10000 : 1000;
      for (int t = 0; t < trials; ++t) {
        const GradeDistribution d = random_distribution(rng, scale);
        const auto ss = sum_squares_lower_bound(d);
        if (ss.value < 1.0 / double(n) - 1e-12) {
          ck.expect(false, "sum of squares fell below 1/n");
          break;
        }
        bool is_uniform = true;
        for (double v : d.y()) is_uniform = is_uniform && std::abs(v - 1.0 / double(n)) <= 1e-9;
        if (ss.is_tight != is_uniform) {
          ck.expect(false, "tightness must coincide with uniformity");
          break;
        }
      }
    }

    // (b) the uniform distribution sits at x_c = 0.5 m for every n and f.
    for (std::size_t n = 2; n <= 10; ++n) {
      for (double f : {0.0, 0.1, 0.25, 0.3, 0.49}) {
        const ModelSpec model = make_model(ShapeKind::GeneralizedRectangular, n, f);
        const Centroid c = centroid(GradeDistribution::uniform(numbered(n)), model);
        if (!close(c.x_c, model.threshold(), 1e-12)) {
          ck.expect(false, "uniform x_c != 0.5m at n=" + std::to_string(n) +
                               ", f=" + std::to_string(f));
        }
      }
    }

    // (c) sign(delta x_c) = sign(delta GPA).
    {
      const GradeScale scale = letters();
      const ModelSpec grm = make_model(ShapeKind::GeneralizedRectangular, 5, 0.3);
      for (int t = 0; t < 5000; ++t) {
        const GradeDistribution a = random_distribution(rng, scale);
        const GradeDistribution b = random_distribution(rng, scale);
        const double dg = gpa(a) - gpa(b);
        const double dx = centroid(a, grm).x_c - centroid(b, grm).x_c;
        if (dg != 0.0 && std::signbit(dx) != std::signbit(dg)) {
          ck.expect(false, "x_c and GPA ordered a pair differently");
          break;
        }
      }
    }

    // (d) the verdict is identical across grm, triangular and trapezoidal.
    {
      const GradeScale scale = letters();
      const ModelSpec grm = make_model(ShapeKind::GeneralizedRectangular, 5, 0.3);
      const ModelSpec tri = make_model(ShapeKind::Triangular, 5, 0.3);
      const ModelSpec trap = make_model(ShapeKind::Trapezoidal, 5, 0.3);
      for (int t = 0; t < 2000; ++t) {
        const std::vector<Group> groups = {{"a", random_distribution(rng, scale)},
                                           {"b", random_distribution(rng, scale)}};
        const Verdict v = compare(groups, grm);
        if (!(v == compare(groups, tri)) || !(v == compare(groups, trap))) {
          ck.expect(false, "the verdict depended on the shape");
          break;
        }
      }
    }
  });

  // ---------------------------------------------------------------- 7 ----
  ck.criterion(7, "Boundary-grade normalization: 10 students between B and A", [&] {
    const GradeDataset ds{"g", letters(), {0, 0, 0, 0, 0}, {0, 0, 0, 10}};
    const GradeDistribution dist = normalize(ds);
    const std::vector<double> want = {0, 0, 0, 0.5, 0.5};
    ck.expect(dist.y() == want, "frequencies must be exactly (0, 0, 0, 0.5, 0.5)");
    double sum = 0.0;
    for (double v : dist.y()) sum += v;
    ck.expect(sum == 1.0, format_mismatch("sum", sum, 1.0) + " (must be exact)");
  });

  if (ck.failures == 0) {
    std::printf("all %d criteria passed\n", 7);
    return 0;
  }
  std::printf("%d criteria FAILED\n", ck.failures);
  return 1;
}
