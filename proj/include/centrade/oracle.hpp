#pragma once

#include <span>
#include <vector>

#include "centrade/model.hpp"

namespace centrade {

/// An axis-aligned bar resting on the x axis.
struct RectangleRegion {
  double x_lo;
  double x_hi;
  double height;
};

/// The literal bar graph of a distribution under a rectangular model:
/// n unit-base rectangles, rectangle i spanning
/// [(i-1)(1-f), (i-1)(1-f) + 1] at height y_i. With f = 0 the bars tile
/// [0, n] exactly; with f > 0 adjacent bars share f of their bases.
/// Only the rectangular shapes have a defined layout.
std::vector<RectangleRegion> layout(const ModelSpec& model, const GradeDistribution& dist);

inline constexpr double kDefaultResolution = 1e-3;

/// Centroid of the union of non-overlapping bars by brute-force midpoint-rule
/// integration on a square grid of the given step. Error is O(resolution^2)
/// in the interior; the partially covered boundary cells keep the practical
/// bound at a few multiples of the resolution.
///
/// Parallelized over fixed grid stripes; the result is bit-identical for any
/// number of threads. Overlapping bars are rejected: the plain area integral
/// double-counts them.
Centroid integral_centroid(std::span<const RectangleRegion> regions,
                           double resolution = kDefaultResolution);

/// Naive cell-by-cell integration over the full bounding box, membership
/// tested per cell. Kept as the reference the stripe kernel is checked
/// against; use integral_centroid() everywhere else.
Centroid integral_centroid_serial(std::span<const RectangleRegion> regions,
                                  double resolution = kDefaultResolution);

/// Centroid of the bars treated as a weighted particle system: each bar is
/// collapsed to its own center with weight equal to its full area, so
/// overlapping parts count once per bar they belong to.
Centroid particle_centroid(std::span<const RectangleRegion> regions);

}  // namespace centrade
