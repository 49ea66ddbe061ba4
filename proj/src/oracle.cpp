#include "centrade/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace centrade {

namespace {

void validate_regions(std::span<const RectangleRegion> regions) {
  for (const RectangleRegion& r : regions) {
    if (!std::isfinite(r.x_lo) || !std::isfinite(r.x_hi) || !std::isfinite(r.height)) {
      fail(Errc::InvalidArgument, "region coordinates must be finite");
    }
    if (!(r.x_lo < r.x_hi)) fail(Errc::InvalidArgument, "region needs x_lo < x_hi");
    if (r.height < 0.0) fail(Errc::InvalidArgument, "region height must be >= 0");
  }
}

// Bars with zero height carry no area and are dropped before any geometry
// checks; the union they would join is unchanged.
std::vector<RectangleRegion> positive_regions(std::span<const RectangleRegion> regions) {
  std::vector<RectangleRegion> active;
  active.reserve(regions.size());
  for (const RectangleRegion& r : regions) {
    if (r.height > 0.0) active.push_back(r);
  }
  return active;
}

void require_disjoint(std::vector<RectangleRegion>& active) {
  std::sort(active.begin(), active.end(),
            [](const RectangleRegion& a, const RectangleRegion& b) { return a.x_lo < b.x_lo; });
  for (std::size_t i = 1; i < active.size(); ++i) {
    if (active[i].x_lo < active[i - 1].x_hi - 1e-12) {
      fail(Errc::OverlappingRegions,
           "bars overlap on the x axis; the plain area integral double-counts them");
    }
  }
}

struct GridSpec {
  double x0;
  double x1;
  std::int64_t columns;
};

GridSpec make_grid(const std::vector<RectangleRegion>& active, double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    fail(Errc::InvalidArgument, "resolution must be a positive real");
  }
  double x0 = active.front().x_lo;
  double x1 = active.front().x_hi;
  for (const RectangleRegion& r : active) {
    x0 = std::min(x0, r.x_lo);
    x1 = std::max(x1, r.x_hi);
  }
  const double columns = std::ceil((x1 - x0) / resolution);
  if (!(columns >= 1.0) || columns > 9e15) {
    fail(Errc::InvalidArgument, "resolution yields an unusable column count");
  }
  return GridSpec{x0, x1, static_cast<std::int64_t>(columns)};
}

struct Moments {
  double area = 0.0;
  double x_moment = 0.0;
  double y_moment = 0.0;
};

Centroid to_centroid(const Moments& m) {
  if (m.area <= 0.0) {
    fail(Errc::EmptyGraph, "the grid covered no area; resolution is too coarse");
  }
  return Centroid{m.x_moment / m.area, m.y_moment / m.area};
}

// Midpoint sums of 1, x and y over one grid column of the union. `height` is
// the bar height over the column's x midpoint (0 when no bar covers it).
Moments column_moments(double x_mid, double height, double h) {
  Moments acc;
  const double cell = h * h;
  for (std::int64_t j = 0;; ++j) {
    const double y_mid = (double(j) + 0.5) * h;
    if (y_mid >= height) break;
    acc.area += cell;
    acc.x_moment += x_mid * cell;
    acc.y_moment += y_mid * cell;
  }
  return acc;
}

}  // namespace

std::vector<RectangleRegion> layout(const ModelSpec& model, const GradeDistribution& dist) {
  if (model.shape != ShapeKind::RectangularClassic &&
      model.shape != ShapeKind::GeneralizedRectangular) {
    fail(Errc::UnsupportedShape,
         std::string("no bar-graph layout for shape '") + shape_name(model.shape) + "'");
  }
  if (dist.size() != model.n) {
    fail(Errc::ScaleMismatch, "distribution has " + std::to_string(dist.size()) +
                                  " grades, model expects " + std::to_string(model.n));
  }
  const double step = 1.0 - model.f;
  std::vector<RectangleRegion> regions;
  regions.reserve(model.n);
  for (std::size_t i = 0; i < model.n; ++i) {
    const double x_lo = double(i) * step;
    regions.push_back(RectangleRegion{x_lo, x_lo + 1.0, dist.y()[i]});
  }
  return regions;
}

Centroid integral_centroid(std::span<const RectangleRegion> regions, double resolution) {
  validate_regions(regions);
  std::vector<RectangleRegion> active = positive_regions(regions);
  if (active.empty()) fail(Errc::EmptyGraph, "all bars have zero area");
  require_disjoint(active);
  const GridSpec grid = make_grid(active, resolution);
  const double h = resolution;

  // Fixed stripe decomposition: the partition and the summation order do not
  // depend on how many threads execute the loop, so the result is
  // bit-identical for any thread count.
  const std::int64_t stripes = std::min<std::int64_t>(grid.columns, 4096);
  std::vector<Moments> partial(static_cast<std::size_t>(stripes));

#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < stripes; ++s) {
    const std::int64_t begin = s * grid.columns / stripes;
    const std::int64_t end = (s + 1) * grid.columns / stripes;
    Moments acc;
    for (std::int64_t k = begin; k < end; ++k) {
      const double x_mid = grid.x0 + (double(k) + 0.5) * h;
      // Bars are disjoint and sorted by x_lo: at most one covers this column.
      double height = 0.0;
      auto it = std::upper_bound(active.begin(), active.end(), x_mid,
                                 [](double x, const RectangleRegion& r) { return x < r.x_lo; });
      if (it != active.begin()) {
        const RectangleRegion& r = *(it - 1);
        if (x_mid < r.x_hi) height = r.height;
      }
      if (height <= 0.0) continue;
      const Moments col = column_moments(x_mid, height, h);
      acc.area += col.area;
      acc.x_moment += col.x_moment;
      acc.y_moment += col.y_moment;
    }
    partial[static_cast<std::size_t>(s)] = acc;
  }

  Moments total;
  for (const Moments& p : partial) {
    total.area += p.area;
    total.x_moment += p.x_moment;
    total.y_moment += p.y_moment;
  }
  return to_centroid(total);
}

Centroid integral_centroid_serial(std::span<const RectangleRegion> regions, double resolution) {
  validate_regions(regions);
  std::vector<RectangleRegion> active = positive_regions(regions);
  if (active.empty()) fail(Errc::EmptyGraph, "all bars have zero area");
  require_disjoint(active);
  const GridSpec grid = make_grid(active, resolution);
  const double h = resolution;

  double y_max = 0.0;
  for (const RectangleRegion& r : active) y_max = std::max(y_max, r.height);

  Moments total;
  const double cell = h * h;
  for (std::int64_t k = 0; k < grid.columns; ++k) {
    const double x_mid = grid.x0 + (double(k) + 0.5) * h;
    for (std::int64_t j = 0;; ++j) {
      const double y_mid = (double(j) + 0.5) * h;
      if (y_mid >= y_max) break;
      bool inside = false;
      for (const RectangleRegion& r : active) {
        if (x_mid >= r.x_lo && x_mid < r.x_hi && y_mid < r.height) {
          inside = true;
          break;
        }
      }
      if (!inside) continue;
      total.area += cell;
      total.x_moment += x_mid * cell;
      total.y_moment += y_mid * cell;
    }
  }
  return to_centroid(total);
}

Centroid particle_centroid(std::span<const RectangleRegion> regions) {
  validate_regions(regions);
  double total_area = 0.0;
  double x_moment = 0.0;
  double y_moment = 0.0;
  for (const RectangleRegion& r : regions) {
    const double area = (r.x_hi - r.x_lo) * r.height;
    total_area += area;
    x_moment += area * 0.5 * (r.x_lo + r.x_hi);
    y_moment += area * 0.5 * r.height;
  }
  if (total_area <= 0.0) fail(Errc::EmptyGraph, "all bars have zero area");
  return Centroid{x_moment / total_area, y_moment / total_area};
}

}  // namespace centrade
