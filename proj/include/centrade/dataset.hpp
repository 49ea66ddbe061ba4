#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "centrade/model.hpp"

namespace centrade {

/// Raw per-grade counts for one group, plus counts of individuals whose
/// performance sits ambiguously between two adjacent grades. Boundary entry j
/// (0-based) covers the pair (grade j, grade j+1). Counts are reals so that
/// percentage data can be fed in directly.
struct GradeDataset {
  std::string group_id;
  GradeScale scale;
  std::vector<double> counts;           // size n
  std::vector<double> boundary_counts;  // size n-1

  bool operator==(const GradeDataset&) const = default;
};

/// Sum of all counts with boundary counts weighted twice, one per adjacent
/// region the ambiguous individuals are placed in.
double total_mass(const GradeDataset& ds);

bool has_boundary_mass(const GradeDataset& ds);

/// Frequencies: y_i = (counts_i + boundary_{i-1} + boundary_i) / total_mass.
/// Each ambiguous individual lands once in each adjacent region and twice in
/// the denominator, so the frequencies still sum to 1.
GradeDistribution normalize(const GradeDataset& ds);

enum class DatasetFormat { Csv, Json };

/// Parses one or more group datasets sharing a single scale.
///
/// CSV: header `group,grade,count`; `grade` is a scale label or a boundary
/// pair `X|Y` of adjacent labels; `#`-prefixed lines are comments; a leading
/// `#scale:F,D,C,B,A` pragma (worst-first) may declare the scale. JSON: see
/// the schema in the README. `scale` supplies the scale out of band; when
/// both are present they must agree.
std::vector<GradeDataset> parse_dataset(std::string_view text, DatasetFormat format,
                                        const std::optional<GradeScale>& scale = std::nullopt);

}  // namespace centrade
