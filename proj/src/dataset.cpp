#include "centrade/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "json.hpp"

namespace centrade {

double total_mass(const GradeDataset& ds) {
  double mass = 0.0;
  for (double c : ds.counts) mass += c;
  for (double b : ds.boundary_counts) mass += 2.0 * b;
  return mass;
}

bool has_boundary_mass(const GradeDataset& ds) {
  return std::any_of(ds.boundary_counts.begin(), ds.boundary_counts.end(),
                     [](double b) { return b > 0.0; });
}

GradeDistribution normalize(const GradeDataset& ds) {
  const std::size_t n = ds.scale.size();
  if (ds.counts.size() != n || ds.boundary_counts.size() != n - 1) {
    fail(Errc::InvalidArgument, "dataset '" + ds.group_id + "' has malformed count vectors");
  }
  for (double c : ds.counts) {
    if (!std::isfinite(c)) fail(Errc::InvalidArgument, "counts must be finite");
    if (c < 0.0) fail(Errc::NegativeCount, "counts must be non-negative");
  }
  for (double b : ds.boundary_counts) {
    if (!std::isfinite(b)) fail(Errc::InvalidArgument, "counts must be finite");
    if (b < 0.0) fail(Errc::NegativeCount, "counts must be non-negative");
  }
  const double mass = total_mass(ds);
  if (!(mass > 0.0)) {
    fail(Errc::NormalizationError, "group '" + ds.group_id + "' has zero total mass");
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double numerator = ds.counts[i];
    if (i > 0) numerator += ds.boundary_counts[i - 1];
    if (i + 1 < n) numerator += ds.boundary_counts[i];
    y[i] = numerator / mass;
  }
  return GradeDistribution(ds.scale, std::move(y));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_count(std::string_view field, std::size_t line_no) {
  const std::string_view s = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(Errc::ParseError, "line " + std::to_string(line_no) + ": '" + std::string(s) +
                               "' is not a number");
  }
  if (!std::isfinite(value)) {
    fail(Errc::ParseError, "line " + std::to_string(line_no) + ": count must be finite");
  }
  if (value < 0.0) {
    fail(Errc::NegativeCount, "line " + std::to_string(line_no) + ": count must be non-negative");
  }
  return value;
}

// Pending counts, keyed by (is_boundary, slot index) so duplicates are caught
// cell-wise rather than merged.
struct GroupBuilder {
  std::string id;
  std::map<std::pair<bool, std::size_t>, double> cells;
};

std::size_t grade_index(const GradeScale& scale, std::string_view label,
                        const std::string& where) {
  if (const auto idx = scale.index_of(trim(label))) return *idx;
  fail(Errc::UnknownGrade,
       where + "grade '" + std::string(trim(label)) + "' is not on the scale");
}

// Resolves a boundary pair to its slot: the lower of the two adjacent indices.
std::size_t boundary_slot(const GradeScale& scale, std::string_view a, std::string_view b,
                          const std::string& where) {
  const std::size_t ia = grade_index(scale, a, where);
  const std::size_t ib = grade_index(scale, b, where);
  const auto [lo, hi] = std::minmax(ia, ib);
  if (hi - lo != 1) {
    fail(Errc::NonAdjacentBoundary, where + "grades '" + std::string(trim(a)) + "' and '" +
                                        std::string(trim(b)) + "' are not adjacent on the scale");
  }
  return lo;
}

std::vector<GradeDataset> build_datasets(const GradeScale& scale,
                                         const std::vector<GroupBuilder>& builders) {
  std::vector<GradeDataset> datasets;
  datasets.reserve(builders.size());
  for (const GroupBuilder& gb : builders) {
    GradeDataset ds{gb.id, scale, std::vector<double>(scale.size(), 0.0),
                    std::vector<double>(scale.size() - 1, 0.0)};
    for (const auto& [cell, value] : gb.cells) {
      (cell.first ? ds.boundary_counts : ds.counts)[cell.second] = value;
    }
    datasets.push_back(std::move(ds));
  }
  return datasets;
}

std::vector<GradeDataset> parse_csv(std::string_view text,
                                    const std::optional<GradeScale>& scale_override) {
  std::optional<GradeScale> pragma_scale;
  std::optional<GradeScale> scale = scale_override;
  bool header_seen = false;
  std::vector<GroupBuilder> builders;
  std::map<std::string, std::size_t, std::less<>> group_index;

  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty()) continue;

    if (t.front() == '#') {
      if (t.starts_with("#scale:")) {
        if (header_seen) {
          fail(Errc::ParseError,
               "line " + std::to_string(line_no) + ": #scale: pragma must precede the data");
        }
        if (pragma_scale) {
          fail(Errc::ParseError, "line " + std::to_string(line_no) + ": duplicate #scale: pragma");
        }
        std::vector<std::string> labels;
        for (std::string_view part : split(t.substr(7), ',')) {
          labels.emplace_back(trim(part));
        }
        pragma_scale.emplace(std::move(labels));
        if (scale_override && !(*scale_override == *pragma_scale)) {
          fail(Errc::ScaleMismatch, "line " + std::to_string(line_no) +
                                        ": #scale: pragma disagrees with the supplied scale");
        }
        if (!scale) scale = pragma_scale;
      }
      continue;
    }

    if (!header_seen) {
      if (t != "group,grade,count") {
        fail(Errc::ParseError,
             "line " + std::to_string(line_no) + ": expected header 'group,grade,count'");
      }
      header_seen = true;
      continue;
    }

    const auto fields = split(t, ',');
    if (fields.size() != 3) {
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": expected 3 fields, got " +
                                 std::to_string(fields.size()));
    }
    const std::string group(trim(fields[0]));
    if (group.empty()) {
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": empty group id");
    }
    if (!scale) {
      fail(Errc::ParseError, "line " + std::to_string(line_no) +
                                 ": no grade scale declared (use --scale or a #scale: pragma)");
    }

    const std::string where = "line " + std::to_string(line_no) + ": ";
    const std::string_view grade = trim(fields[1]);
    std::pair<bool, std::size_t> cell;
    if (const std::size_t bar = grade.find('|'); bar != std::string_view::npos) {
      cell = {true, boundary_slot(*scale, grade.substr(0, bar), grade.substr(bar + 1), where)};
    } else {
      cell = {false, grade_index(*scale, grade, where)};
    }
    const double value = parse_count(fields[2], line_no);

    auto [it, inserted] = group_index.try_emplace(group, builders.size());
    if (inserted) builders.push_back(GroupBuilder{group, {}});
    if (!builders[it->second].cells.emplace(cell, value).second) {
      fail(Errc::DuplicateCell, "line " + std::to_string(line_no) + ": group '" + group +
                                    "' already has a count for '" + std::string(grade) + "'");
    }
  }

  if (!header_seen) fail(Errc::ParseError, "no 'group,grade,count' header found");
  if (builders.empty()) fail(Errc::ParseError, "no data rows");
  return build_datasets(*scale, builders);
}

std::vector<GradeDataset> parse_json(std::string_view text,
                                     const std::optional<GradeScale>& scale_override) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ParseError, e.what());
  }
  if (!doc.is_object()) fail(Errc::ParseError, "top-level JSON value must be an object");

  std::optional<GradeScale> scale = scale_override;
  if (doc.contains("scale")) {
    const auto& js = doc.at("scale");
    if (!js.is_array()) fail(Errc::ParseError, "'scale' must be an array of labels");
    std::vector<std::string> labels;
    for (const auto& item : js) {
      if (!item.is_string()) fail(Errc::ParseError, "'scale' must be an array of labels");
      labels.push_back(item.get<std::string>());
    }
    GradeScale file_scale(std::move(labels));
    if (scale_override && !(*scale_override == file_scale)) {
      fail(Errc::ScaleMismatch, "'scale' in the file disagrees with the supplied scale");
    }
    scale = std::move(file_scale);
  }
  if (!scale) fail(Errc::ParseError, "no grade scale declared");

  if (!doc.contains("groups") || !doc.at("groups").is_array()) {
    fail(Errc::ParseError, "'groups' must be an array");
  }

  std::vector<GroupBuilder> builders;
  std::set<std::string> seen_ids;
  for (const auto& jg : doc.at("groups")) {
    if (!jg.is_object() || !jg.contains("id") || !jg.at("id").is_string()) {
      fail(Errc::ParseError, "each group needs a string 'id'");
    }
    GroupBuilder gb{jg.at("id").get<std::string>(), {}};
    if (!seen_ids.insert(gb.id).second) {
      fail(Errc::ParseError, "duplicate group id '" + gb.id + "'");
    }

    if (jg.contains("counts")) {
      const auto& jc = jg.at("counts");
      if (!jc.is_object()) fail(Errc::ParseError, "'counts' must be an object of label: number");
      for (const auto& [label, jv] : jc.items()) {
        const auto idx = scale->index_of(label);
        if (!idx) fail(Errc::UnknownGrade, "grade '" + label + "' is not on the scale");
        if (!jv.is_number()) fail(Errc::ParseError, "count for '" + label + "' must be a number");
        const double value = jv.get<double>();
        if (value < 0.0) fail(Errc::NegativeCount, "count for '" + label + "' is negative");
        gb.cells.emplace(std::make_pair(false, *idx), value);
      }
    }
    if (jg.contains("boundaries")) {
      const auto& jb = jg.at("boundaries");
      if (!jb.is_array()) fail(Errc::ParseError, "'boundaries' must be an array");
      for (const auto& entry : jb) {
        if (!entry.is_object() || !entry.contains("between") || !entry.contains("count") ||
            !entry.at("between").is_array() || entry.at("between").size() != 2 ||
            !entry.at("between").at(0).is_string() || !entry.at("between").at(1).is_string() ||
            !entry.at("count").is_number()) {
          fail(Errc::ParseError, "each boundary needs {\"between\": [label, label], \"count\": n}");
        }
        const std::string a = entry.at("between").at(0).get<std::string>();
        const std::string b = entry.at("between").at(1).get<std::string>();
        const std::size_t slot = boundary_slot(*scale, a, b, "group '" + gb.id + "': ");
        const double value = entry.at("count").get<double>();
        if (value < 0.0) fail(Errc::NegativeCount, "boundary count for '" + a + "|" + b + "' is negative");
        if (!gb.cells.emplace(std::make_pair(true, slot), value).second) {
          fail(Errc::DuplicateCell, "group '" + gb.id + "' has the boundary '" + a + "|" + b +
                                        "' more than once");
        }
      }
    }
    builders.push_back(std::move(gb));
  }

  if (builders.empty()) fail(Errc::ParseError, "no groups");
  return build_datasets(*scale, builders);
}

}  // namespace

std::vector<GradeDataset> parse_dataset(std::string_view text, DatasetFormat format,
                                        const std::optional<GradeScale>& scale) {
  switch (format) {
    case DatasetFormat::Csv: return parse_csv(text, scale);
    case DatasetFormat::Json: return parse_json(text, scale);
  }
  fail(Errc::InvalidArgument, "unknown dataset format");
}

}  // namespace centrade
