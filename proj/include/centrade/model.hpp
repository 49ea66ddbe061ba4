#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "centrade/error.hpp"

namespace centrade {

/// Ordered list of grade labels, worst first, so that label index i (1-based
/// in the formulas) runs from the lowest performance level to the highest.
class GradeScale {
 public:
  explicit GradeScale(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t index) const { return labels_.at(index); }

  /// 0-based index of a label, or nullopt if the label is not on the scale.
  std::optional<std::size_t> index_of(std::string_view label) const noexcept;

  bool operator==(const GradeScale&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// Normalized frequency vector over a scale. Every entry is non-negative and
/// the entries sum to 1 within 1e-12; violations are rejected at construction.
class GradeDistribution {
 public:
  GradeDistribution(GradeScale scale, std::vector<double> frequencies);

  const GradeScale& scale() const noexcept { return scale_; }
  const std::vector<double>& y() const noexcept { return y_; }
  std::size_t size() const noexcept { return y_.size(); }

  static GradeDistribution uniform(GradeScale scale);
  static GradeDistribution point_mass(GradeScale scale, std::size_t index);

 private:
  GradeScale scale_;
  std::vector<double> y_;
};

enum class ShapeKind {
  RectangularClassic,
  GeneralizedRectangular,
  Triangular,
  Trapezoidal,
};

const char* shape_name(ShapeKind shape) noexcept;
std::optional<ShapeKind> shape_from_name(std::string_view name) noexcept;

/// A fully derived assessment model:
///   x_c = alpha * sum(i * y_i) - beta,   y_c = gamma * sum(y_i^2),
/// with the membership graph supported on [0, m]. All coefficients follow
/// from the shape, the grade count n and the overlap fraction f; they are
/// never stored independently of each other.
struct ModelSpec {
  ShapeKind shape;
  std::size_t n;
  double f;      // overlap fraction between adjacent figures, k/100
  double alpha;  // 1 - f
  double beta;   // 0.5 - f
  double gamma;  // shape-dependent scale of y_c
  double m;      // support span, n - f*(n-1)

  /// Comparison threshold: the midpoint of the support.
  double threshold() const noexcept { return 0.5 * m; }
};

/// Derives a ModelSpec. The classic rectangular shape admits no overlap;
/// the other shapes accept any f in [0, 0.5).
ModelSpec make_model(ShapeKind shape, std::size_t n, double f);

/// Default overlap fraction for the overlapping shapes (30%).
inline constexpr double kDefaultOverlap = 0.3;

/// Center of gravity of a membership graph.
struct Centroid {
  double x_c;
  double y_c;
};

/// Grade point average, sum((i-1) * y_i); ranges over [0, n-1].
double gpa(const GradeDistribution& dist);

/// Closed-form centroid of the distribution under the model.
Centroid centroid(const GradeDistribution& dist, const ModelSpec& model);

/// x_c computed through the GPA identity sum(i*y_i) = 1 + GPA. Shares the
/// arithmetic path of centroid(), so the two agree bit for bit.
double gpa_xc_identity(const GradeDistribution& dist, const ModelSpec& model);

/// Centroids of the three anchor distributions: uniform (the unique y_c
/// minimum), all mass on the best grade, all mass on the worst grade.
struct ExtremePoints {
  Centroid min;    // (0.5*m, gamma/n)
  Centroid ideal;  // (alpha*n - beta, gamma)
  Centroid worst;  // (alpha - beta, gamma)
};

ExtremePoints extremes(const ModelSpec& model);

/// sum(y_i^2) together with whether it attains the lower bound 1/n
/// (within 1e-12), which happens exactly for the uniform distribution.
struct SumSquares {
  double value;
  bool is_tight;
};

SumSquares sum_squares_lower_bound(const GradeDistribution& dist);

enum class CompareRule {
  XcDominates,
  TieHighHalfYcHigher,
  TieLowHalfYcLower,
  FullTie,
};

const char* rule_name(CompareRule rule) noexcept;  // stable identifier
const char* rule_text(CompareRule rule) noexcept;  // human-readable sentence

struct PairDecision {
  std::string first;   // ranked at or above `second`
  std::string second;
  CompareRule rule;

  bool operator==(const PairDecision&) const = default;
};

/// Outcome of a multi-group comparison: a total preorder over the groups
/// (best first, tied groups share a rank) plus the rule that decided each
/// adjacent pair of the ranked sequence.
struct Verdict {
  std::vector<std::vector<std::string>> ranking;
  std::vector<PairDecision> decisions;

  bool operator==(const Verdict&) const = default;
};

struct Group {
  std::string id;
  GradeDistribution dist;
};

inline constexpr double kDefaultEps = 1e-9;

/// Ranks groups by the criterion: larger x_c wins; x_c values within eps of
/// each other tie, and the tie is broken by y_c — larger y_c wins when the
/// shared x_c is at or above 0.5*m, smaller y_c wins below it. Groups tied
/// on both coordinates share a rank.
Verdict compare(const std::vector<Group>& groups, const ModelSpec& model,
                double eps = kDefaultEps);

}  // namespace centrade
