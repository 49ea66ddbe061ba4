#pragma once

#include <optional>
#include <string>
#include <vector>

#include "centrade/model.hpp"

namespace centrade {

struct GroupReport {
  std::string id;
  Centroid centroid;
  double gpa;
};

enum class ReportFormat { Text, Json };

/// Renders the analysis of one or more groups. Text mode prints the model
/// coefficients, a per-group table and, when a verdict is given, the ranking
/// and the rule that decided each adjacent pair. JSON mode emits the stable
/// schema documented in the README, with numbers at full precision. Output is
/// deterministic: identical inputs produce identical bytes.
std::string render_report(const std::vector<GroupReport>& groups,
                          const std::optional<Verdict>& verdict, const ModelSpec& model,
                          ReportFormat format);

/// Just the derived coefficients of a model; the JSON form matches the
/// "model" object of the report schema.
std::string render_coefficients(const ModelSpec& model, ReportFormat format);

}  // namespace centrade
