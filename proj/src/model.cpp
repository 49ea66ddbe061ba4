#include "centrade/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace centrade {

GradeScale::GradeScale(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    fail(Errc::InvalidScaleSize, "a grade scale needs at least two labels, got " +
                                     std::to_string(labels_.size()));
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (label.empty()) fail(Errc::InvalidArgument, "grade labels must be non-empty");
    if (!seen.insert(label).second) {
      fail(Errc::InvalidArgument, "duplicate grade label '" + label + "'");
    }
  }
}

std::optional<std::size_t> GradeScale::index_of(std::string_view label) const noexcept {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

GradeDistribution::GradeDistribution(GradeScale scale, std::vector<double> frequencies)
    : scale_(std::move(scale)), y_(std::move(frequencies)) {
  if (y_.size() != scale_.size()) {
    fail(Errc::InvalidArgument, "frequency vector has " + std::to_string(y_.size()) +
                                    " entries for a scale of " +
                                    std::to_string(scale_.size()));
  }
  double sum = 0.0;
  for (double v : y_) {
    if (!std::isfinite(v) || v < 0.0) {
      fail(Errc::InvalidArgument, "frequencies must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    fail(Errc::NormalizationError,
         "frequencies must sum to 1, got " + std::to_string(sum));
  }
}

GradeDistribution GradeDistribution::uniform(GradeScale scale) {
  const std::size_t n = scale.size();
  return GradeDistribution(std::move(scale), std::vector<double>(n, 1.0 / double(n)));
}

GradeDistribution GradeDistribution::point_mass(GradeScale scale, std::size_t index) {
  if (index >= scale.size()) fail(Errc::InvalidArgument, "point mass index out of range");
  std::vector<double> y(scale.size(), 0.0);
  y[index] = 1.0;
  return GradeDistribution(std::move(scale), std::move(y));
}

const char* shape_name(ShapeKind shape) noexcept {
  switch (shape) {
    case ShapeKind::RectangularClassic: return "classic";
    case ShapeKind::GeneralizedRectangular: return "grm";
    case ShapeKind::Triangular: return "triangular";
    case ShapeKind::Trapezoidal: return "trapezoidal";
  }
  return "?";
}

std::optional<ShapeKind> shape_from_name(std::string_view name) noexcept {
  if (name == "classic") return ShapeKind::RectangularClassic;
  if (name == "grm") return ShapeKind::GeneralizedRectangular;
  if (name == "triangular") return ShapeKind::Triangular;
  if (name == "trapezoidal") return ShapeKind::Trapezoidal;
  return std::nullopt;
}

ModelSpec make_model(ShapeKind shape, std::size_t n, double f) {
  if (n < 2) {
    fail(Errc::InvalidScaleSize, "a model needs at least two grades, got " +
                                     std::to_string(n));
  }
  if (!(f >= 0.0 && f < 0.5)) {  // also rejects NaN
    fail(Errc::InvalidOverlap,
         "overlap fraction must lie in [0, 0.5), got " + std::to_string(f));
  }
  if (shape == ShapeKind::RectangularClassic && f != 0.0) {
    fail(Errc::OverlapNotAllowed, "the classic rectangular shape admits no overlap");
  }
  double gamma = 0.0;
  switch (shape) {
    case ShapeKind::RectangularClassic:
    case ShapeKind::GeneralizedRectangular: gamma = 0.5; break;
    case ShapeKind::Triangular: gamma = 0.2; break;
    case ShapeKind::Trapezoidal: gamma = 3.0 / 7.0; break;
  }
  return ModelSpec{
      .shape = shape,
      .n = n,
      .f = f,
      .alpha = 1.0 - f,
      .beta = 0.5 - f,
      .gamma = gamma,
      .m = double(n) - f * double(n - 1),
  };
}

namespace {

void require_same_size(const GradeDistribution& dist, const ModelSpec& model) {
  if (dist.size() != model.n) {
    fail(Errc::ScaleMismatch, "distribution has " + std::to_string(dist.size()) +
                                  " grades, model expects " + std::to_string(model.n));
  }
}

// Single arithmetic path for x_c, shared by centroid() and gpa_xc_identity().
double xc_from_gpa(const ModelSpec& model, double gpa_value) {
  return model.alpha * (1.0 + gpa_value) - model.beta;
}

GradeScale anonymous_scale(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("g" + std::to_string(i));
  return GradeScale(std::move(labels));
}

}  // namespace

double gpa(const GradeDistribution& dist) {
  const auto& y = dist.y();
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += double(i) * y[i];
  return acc;
}

Centroid centroid(const GradeDistribution& dist, const ModelSpec& model) {
  require_same_size(dist, model);
  double sum_sq = 0.0;
  for (double v : dist.y()) sum_sq += v * v;
  return Centroid{xc_from_gpa(model, gpa(dist)), model.gamma * sum_sq};
}

double gpa_xc_identity(const GradeDistribution& dist, const ModelSpec& model) {
  require_same_size(dist, model);
  return xc_from_gpa(model, gpa(dist));
}

ExtremePoints extremes(const ModelSpec& model) {
  GradeScale scale = anonymous_scale(model.n);
  return ExtremePoints{
      .min = centroid(GradeDistribution::uniform(scale), model),
      .ideal = centroid(GradeDistribution::point_mass(scale, model.n - 1), model),
      .worst = centroid(GradeDistribution::point_mass(scale, 0), model),
  };
}

SumSquares sum_squares_lower_bound(const GradeDistribution& dist) {
  double sum_sq = 0.0;
  for (double v : dist.y()) sum_sq += v * v;
  const double bound = 1.0 / double(dist.size());
  return SumSquares{sum_sq, std::abs(sum_sq - bound) <= 1e-12};
}

const char* rule_name(CompareRule rule) noexcept {
  switch (rule) {
    case CompareRule::XcDominates: return "xc_dominates";
    case CompareRule::TieHighHalfYcHigher: return "tie_high_half_yc_higher";
    case CompareRule::TieLowHalfYcLower: return "tie_low_half_yc_lower";
    case CompareRule::FullTie: return "full_tie";
  }
  return "?";
}

const char* rule_text(CompareRule rule) noexcept {
  switch (rule) {
    case CompareRule::XcDominates: return "greater x_c wins";
    case CompareRule::TieHighHalfYcHigher: return "tie on x_c; high half; greater y_c wins";
    case CompareRule::TieLowHalfYcLower: return "tie on x_c; low half; smaller y_c wins";
    case CompareRule::FullTie: return "full tie";
  }
  return "?";
}

Verdict compare(const std::vector<Group>& groups, const ModelSpec& model, double eps) {
  if (groups.size() < 2) {
    fail(Errc::TooFewGroups, "at least two groups required, got " +
                                 std::to_string(groups.size()));
  }
  if (!(eps > 0.0)) fail(Errc::InvalidArgument, "eps must be positive");

  const GradeScale& scale = groups.front().dist.scale();
  for (const Group& g : groups) {
    require_same_size(g.dist, model);
    if (!(g.dist.scale() == scale)) {
      fail(Errc::ScaleMismatch, "group '" + g.id + "' uses a different grade scale");
    }
  }

  // x_c and y_c are quantized into eps-wide bands; the band index is what the
  // ordering sees, which keeps the pairwise criterion transitive. A band at or
  // above the band of 0.5*m ranks greater y_c first, a band below it ranks
  // smaller y_c first.
  const auto band = [eps](double v) { return std::floor(v / eps); };
  const double threshold_band = band(model.threshold());

  struct Entry {
    const Group* group;
    double x_band;
    double y_band;
    bool high_half;
  };
  std::vector<Entry> entries;
  entries.reserve(groups.size());
  for (const Group& g : groups) {
    const Centroid c = centroid(g.dist, model);
    const double xb = band(c.x_c);
    entries.push_back(Entry{&g, xb, band(c.y_c), xb >= threshold_band});
  }

  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.x_band != b.x_band) return a.x_band > b.x_band;
    return a.high_half ? a.y_band > b.y_band : a.y_band < b.y_band;
  });

  Verdict verdict;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const bool tied_with_prev = i > 0 && entries[i].x_band == entries[i - 1].x_band &&
                                entries[i].y_band == entries[i - 1].y_band;
    if (tied_with_prev) {
      verdict.ranking.back().push_back(entries[i].group->id);
    } else {
      verdict.ranking.push_back({entries[i].group->id});
    }
    if (i > 0) {
      const Entry& a = entries[i - 1];
      const Entry& b = entries[i];
      CompareRule rule;
      if (a.x_band != b.x_band) {
        rule = CompareRule::XcDominates;
      } else if (a.y_band != b.y_band) {
        rule = a.high_half ? CompareRule::TieHighHalfYcHigher
                           : CompareRule::TieLowHalfYcLower;
      } else {
        rule = CompareRule::FullTie;
      }
      verdict.decisions.push_back(PairDecision{a.group->id, b.group->id, rule});
    }
  }
  return verdict;
}

}  // namespace centrade
