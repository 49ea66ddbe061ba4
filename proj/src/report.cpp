#include "centrade/report.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

namespace centrade {

namespace {

void require_consistent(const std::vector<GroupReport>& groups,
                        const std::optional<Verdict>& verdict) {
  if (groups.empty()) fail(Errc::InvalidArgument, "nothing to report");
  std::set<std::string> group_ids;
  for (const GroupReport& g : groups) {
    if (!group_ids.insert(g.id).second) {
      fail(Errc::InvalidArgument, "duplicate group id '" + g.id + "' in report");
    }
  }
  if (!verdict) return;
  std::set<std::string> ranked_ids;
  for (const auto& rank : verdict->ranking) {
    for (const auto& id : rank) ranked_ids.insert(id);
  }
  if (ranked_ids != group_ids) {
    fail(Errc::InvalidArgument, "verdict and group reports cover different group ids");
  }
}

std::string render_text(const std::vector<GroupReport>& groups,
                        const std::optional<Verdict>& verdict, const ModelSpec& model) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  os << "model: " << shape_name(model.shape) << "  n=" << model.n << "  f=" << model.f << "\n";
  os << "alpha=" << model.alpha << "  beta=" << model.beta << "  gamma=" << model.gamma
     << "  m=" << model.m << "  threshold=" << model.threshold() << "\n\n";

  std::size_t width = 5;  // "group"
  for (const GroupReport& g : groups) width = std::max(width, g.id.size());
  os << std::left << std::setw(int(width) + 2) << "group" << std::right << std::setw(12) << "x_c"
     << std::setw(12) << "y_c" << std::setw(12) << "gpa" << "\n";
  for (const GroupReport& g : groups) {
    os << std::left << std::setw(int(width) + 2) << g.id << std::right << std::setw(12)
       << g.centroid.x_c << std::setw(12) << g.centroid.y_c << std::setw(12) << g.gpa << "\n";
  }

  if (verdict) {
    os << "\nranking:\n";
    for (std::size_t rank = 0; rank < verdict->ranking.size(); ++rank) {
      os << "  " << rank + 1 << ". ";
      const auto& ids = verdict->ranking[rank];
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0) os << ", ";
        os << ids[i];
      }
      os << "\n";
    }
    os << "\ndecisions:\n";
    for (const PairDecision& d : verdict->decisions) {
      os << "  " << d.first << " vs " << d.second << ": " << rule_text(d.rule) << "\n";
    }
  }
  return os.str();
}

nlohmann::ordered_json model_json(const ModelSpec& model) {
  return {
      {"shape", shape_name(model.shape)},
      {"n", model.n},
      {"f", model.f},
      {"alpha", model.alpha},
      {"beta", model.beta},
      {"gamma", model.gamma},
      {"m", model.m},
      {"threshold", model.threshold()},
  };
}

std::string render_json(const std::vector<GroupReport>& groups,
                        const std::optional<Verdict>& verdict, const ModelSpec& model) {
  nlohmann::ordered_json j;
  j["model"] = model_json(model);
  j["groups"] = nlohmann::ordered_json::array();
  for (const GroupReport& g : groups) {
    j["groups"].push_back({
        {"id", g.id},
        {"x_c", g.centroid.x_c},
        {"y_c", g.centroid.y_c},
        {"gpa", g.gpa},
    });
  }
  if (verdict) {
    j["ranking"] = verdict->ranking;
    j["decisions"] = nlohmann::ordered_json::array();
    for (const PairDecision& d : verdict->decisions) {
      j["decisions"].push_back({
          {"pair", {d.first, d.second}},
          {"rule", rule_name(d.rule)},
      });
    }
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::string render_report(const std::vector<GroupReport>& groups,
                          const std::optional<Verdict>& verdict, const ModelSpec& model,
                          ReportFormat format) {
  require_consistent(groups, verdict);
  switch (format) {
    case ReportFormat::Text: return render_text(groups, verdict, model);
    case ReportFormat::Json: return render_json(groups, verdict, model);
  }
  fail(Errc::InvalidArgument, "unknown report format");
}

std::string render_coefficients(const ModelSpec& model, ReportFormat format) {
  if (format == ReportFormat::Json) return model_json(model).dump(2) + "\n";
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  os << "shape: " << shape_name(model.shape) << "\n"
     << "n: " << model.n << "\n"
     << "f: " << model.f << "\n"
     << "alpha: " << model.alpha << "\n"
     << "beta: " << model.beta << "\n"
     << "gamma: " << model.gamma << "\n"
     << "m: " << model.m << "\n"
     << "threshold: " << model.threshold() << "\n";
  return os.str();
}

}  // namespace centrade
