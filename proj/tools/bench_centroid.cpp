// Times the stripe-parallel midpoint integration against the naive serial
// reference on a classic bar-graph layout.
//
//   bench_centroid [--n 5] [--reps 3] [--resolution h]   (default sweeps h)

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "centrade/model.hpp"
#include "centrade/oracle.hpp"

namespace {

using namespace centrade;

GradeDistribution random_distribution(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp_draw(1.0);
  std::vector<double> y(n);
  double sum = 0.0;
  for (double& v : y) {
    v = exp_draw(rng);
    sum += v;
  }
  for (double& v : y) v /= sum;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("g" + std::to_string(i));
  return GradeDistribution(GradeScale(std::move(labels)), std::move(y));
}

template <typename F>
double best_of(int reps, F&& body) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 5;
  int reps = 3;
  double single_resolution = 0.0;

  CLI::App app{"Benchmark: parallel vs serial midpoint integration"};
  app.add_option("--n", n, "Grade count")->capture_default_str();
  app.add_option("--reps", reps, "Repetitions per measurement (best is kept)")
      ->capture_default_str();
  app.add_option("--resolution", single_resolution, "Run a single grid step instead of the sweep");
  CLI11_PARSE(app, argc, argv);

  const ModelSpec model = make_model(ShapeKind::RectangularClassic, n, 0.0);
  const GradeDistribution dist = random_distribution(n, 20250811);
  const auto regions = layout(model, dist);

#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (compiled without OpenMP)\n";
#endif

  std::vector<double> resolutions = {4e-3, 2e-3, 1e-3, 5e-4};
  if (single_resolution > 0.0) resolutions = {single_resolution};

  std::cout << std::left << std::setw(12) << "resolution" << std::right << std::setw(12)
            << "serial_ms" << std::setw(14) << "parallel_ms" << std::setw(10) << "speedup"
            << std::setw(14) << "max_delta" << "\n";
  for (double h : resolutions) {
    Centroid serial{}, parallel{};
    const double serial_ms = best_of(reps, [&] { serial = integral_centroid_serial(regions, h); });
    const double parallel_ms = best_of(reps, [&] { parallel = integral_centroid(regions, h); });
    const double delta = std::max(std::abs(serial.x_c - parallel.x_c),
                                  std::abs(serial.y_c - parallel.y_c));
    std::cout << std::left << std::setw(12) << h << std::right << std::fixed
              << std::setprecision(2) << std::setw(12) << serial_ms << std::setw(14)
              << parallel_ms << std::setw(10) << serial_ms / parallel_ms << std::scientific
              << std::setprecision(2) << std::setw(14) << delta << "\n";
    std::cout.unsetf(std::ios::floatfield);
  }
  return 0;
}
