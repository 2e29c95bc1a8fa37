#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lad/cascade.hpp"
#include "text.hpp"

namespace lad {

namespace {

KeyVariableGroup summarize(std::string name, int first, int last,
                           const std::vector<const ClassDnf*>& dnfs) {
  KeyVariableGroup group{std::move(name), first, last, 0, {}};
  std::map<std::string, IndicatorCount> counts;
  for (const auto* dnf : dnfs) {
    for (const auto& pattern : dnf->patterns) {
      ++group.pattern_count;
      std::set<std::string> in_pattern;
      for (const auto& literal : pattern.literals) {
        auto& count = counts[literal.indicator];
        count.indicator = literal.indicator;
        ++count.occurrences;
        in_pattern.insert(literal.indicator);
      }
      for (const auto& code : in_pattern) ++counts[code].patterns;
    }
  }
  for (auto& [code, count] : counts) {
    count.share = group.pattern_count == 0
                      ? 0.0
                      : static_cast<double>(count.patterns) / static_cast<double>(group.pattern_count);
    group.indicators.push_back(count);
  }
  std::sort(group.indicators.begin(), group.indicators.end(),
            [](const IndicatorCount& a, const IndicatorCount& b) {
              if (a.patterns != b.patterns) return a.patterns > b.patterns;
              if (a.occurrences != b.occurrences) return a.occurrences > b.occurrences;
              return a.indicator < b.indicator;
            });
  return group;
}

}  // namespace

KeyVariableReport key_variables(const CascadeModel& model) {
  KeyVariableReport report;
  const auto& scale = model.scale;

  std::map<int, const ClassDnf*> by_rank;
  for (const auto& stage : model.stages) {
    if (!stage.empty()) by_rank[stage.rank] = &stage;
  }
  if (model.residual && !model.residual->empty()) by_rank[scale.worst_rank()] = &*model.residual;

  for (const auto& [rank, dnf] : by_rank) {
    report.stages.push_back(summarize(scale.label(rank), rank, rank, {dnf}));
  }

  // The best class on its own, then runs of three notches.
  std::vector<std::pair<int, int>> spans{{1, 1}};
  for (int first = 2; first <= scale.worst_rank(); first += 3) {
    spans.emplace_back(first, std::min(first + 2, scale.worst_rank()));
  }
  for (const auto& [first, last] : spans) {
    std::vector<const ClassDnf*> members;
    for (int r = first; r <= last; ++r) {
      if (auto it = by_rank.find(r); it != by_rank.end()) members.push_back(it->second);
    }
    if (members.empty()) continue;
    std::string name = scale.label(first);
    if (last != first) name += "-" + scale.label(last);
    report.groups.push_back(summarize(std::move(name), first, last, members));
  }
  return report;
}

std::string format_key_variables(const KeyVariableReport& report) {
  std::ostringstream out;
  auto section = [&](const char* title, const std::vector<KeyVariableGroup>& groups) {
    out << title << '\n';
    for (const auto& group : groups) {
      out << "  " << group.name << " (" << group.pattern_count << " patterns):";
      for (const auto& c : group.indicators) {
        out << ' ' << c.indicator << '=' << c.occurrences << " ["
            << text::format_number(std::round(c.share * 1000.0) / 10.0) << "%]";
      }
      out << '\n';
    }
  };
  section("groups", report.groups);
  section("stages", report.stages);
  return out.str();
}

}  // namespace lad
