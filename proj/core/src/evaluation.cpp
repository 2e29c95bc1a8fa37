#include "lad/evaluation.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lad/errors.hpp"
#include "text.hpp"

namespace lad {

std::string_view to_string(MismatchDirection direction) {
  switch (direction) {
    case MismatchDirection::ModelBetter: return "model-better";
    case MismatchDirection::ModelWorse: return "model-worse";
    case MismatchDirection::Undefined: return "undefined";
  }
  return "undefined";
}

EvaluationReport evaluate_predictions(std::span<const Prediction> predictions, const RatingScale& scale,
                                      int year) {
  if (predictions.empty()) throw DataError("no labeled records");

  EvaluationReport report;
  report.year = year;
  report.labeled = predictions.size();

  std::size_t train_total = 0, train_hits = 0, test_total = 0, test_hits = 0;
  std::size_t better = 0, worse = 0;

  for (const auto& p : predictions) {
    const auto observed = scale.rank(p.observed);
    if (!observed) throw DataError(p.country + ": observed rating '" + p.observed + "' is not on the scale");
    std::optional<int> modelled;
    if (p.model) {
      modelled = scale.rank(*p.model);
      if (!modelled) throw DataError(p.country + ": model rating '" + *p.model + "' is not on the scale");
    }
    const bool hit = modelled && *modelled == *observed;
    if (p.split == Split::Train) { ++train_total; train_hits += hit; }
    if (p.split == Split::Test) { ++test_total; test_hits += hit; }
    if (hit) {
      ++report.matches;
      continue;
    }

    Mismatch m{p.country, p.year, p.split, p.model, p.observed, std::nullopt, MismatchDirection::Undefined};
    if (modelled) {
      m.signed_distance = *observed - *modelled;
      m.direction = *m.signed_distance > 0 ? MismatchDirection::ModelBetter : MismatchDirection::ModelWorse;
      (*m.signed_distance > 0 ? better : worse)++;
    } else {
      ++report.unclassified;
    }
    ++report.mismatches_by_country[p.country];
    report.mismatches.push_back(std::move(m));
  }

  std::stable_sort(report.mismatches.begin(), report.mismatches.end(),
                   [](const Mismatch& a, const Mismatch& b) {
                     if (a.signed_distance.has_value() != b.signed_distance.has_value()) {
                       return a.signed_distance.has_value();
                     }
                     if (!a.signed_distance) return false;
                     return std::abs(*a.signed_distance) > std::abs(*b.signed_distance);
                   });

  auto ratio = [](std::size_t hits, std::size_t total) {
    return static_cast<double>(hits) / static_cast<double>(total);
  };
  report.match_ratio_overall = ratio(report.matches, report.labeled);
  if (train_total > 0) report.match_ratio_train = ratio(train_hits, train_total);
  if (test_total > 0) report.match_ratio_test = ratio(test_hits, test_total);
  if (better + worse > 0) {
    report.model_better_share = ratio(better, better + worse);
    report.model_worse_share = ratio(worse, better + worse);
  }
  return report;
}

EvaluationReport evaluate(const CascadeModel& model, const Dataset& dataset) {
  std::vector<Prediction> predictions;
  for (auto i : dataset.labeled()) {
    const auto& record = dataset[i];
    const auto verdict = classify(model, record);
    std::optional<std::string> label;
    if (verdict.rank) label = model.scale.label(*verdict.rank);
    predictions.push_back({record.country, record.year, dataset.split_of(i), std::move(label), *record.rating});
  }
  return evaluate_predictions(predictions, model.scale, model.year);
}

RepeatOffenders repeat_offenders(std::span<const EvaluationReport> reports) {
  std::map<std::string, std::size_t> counts;
  for (const auto& report : reports) {
    for (const auto& m : report.mismatches) ++counts[m.country];
  }
  RepeatOffenders out;
  for (const auto& [country, n] : counts) {
    if (n == 2) out.twice.emplace_back(country, n);
    else if (n > 2) out.more_than_twice.emplace_back(country, n);
  }
  return out;
}

namespace {

std::string percent(double ratio) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << ratio * 100.0 << '%';
  return out.str();
}

}  // namespace

std::string format_report_text(const EvaluationReport& report) {
  std::ostringstream out;
  out << "Evaluation, year " << report.year << '\n';
  out << "  labeled records: " << report.labeled << ", exact matches: " << report.matches << '\n';
  out << "  match ratio (overall): " << percent(report.match_ratio_overall) << '\n';
  if (report.match_ratio_train) out << "  match ratio (train):   " << percent(*report.match_ratio_train) << '\n';
  if (report.match_ratio_test) out << "  match ratio (test):    " << percent(*report.match_ratio_test) << '\n';
  out << "  unclassified: " << report.unclassified << '\n';
  if (!report.mismatches.empty()) {
    out << "  model better than agency: " << percent(report.model_better_share)
        << ", model worse: " << percent(report.model_worse_share) << '\n';
    out << '\n' << std::left << std::setw(28) << "Country" << std::setw(14) << "Our Result" << std::setw(14)
        << "Fitch Rating" << std::setw(10) << "Steps" << "Split" << '\n';
    for (const auto& m : report.mismatches) {
      out << std::setw(28) << m.country << std::setw(14) << m.model.value_or("Unclassified") << std::setw(14)
          << m.observed << std::setw(10) << (m.signed_distance ? std::to_string(*m.signed_distance) : "-")
          << to_string(m.split) << '\n';
    }
  }
  return out.str();
}

std::string format_report_json(const EvaluationReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["year"] = report.year;
  j["labeled"] = report.labeled;
  j["matches"] = report.matches;
  j["match_ratio_overall"] = report.match_ratio_overall;
  j["match_ratio_train"] = report.match_ratio_train ? ordered_json(*report.match_ratio_train) : ordered_json();
  j["match_ratio_test"] = report.match_ratio_test ? ordered_json(*report.match_ratio_test) : ordered_json();
  j["unclassified"] = report.unclassified;
  j["model_better_share"] = report.model_better_share;
  j["model_worse_share"] = report.model_worse_share;
  auto rows = ordered_json::array();
  for (const auto& m : report.mismatches) {
    ordered_json row;
    row["country"] = m.country;
    row["year"] = m.year;
    row["split"] = std::string(to_string(m.split));
    row["model"] = m.model ? ordered_json(*m.model) : ordered_json();
    row["observed"] = m.observed;
    row["signed_distance"] = m.signed_distance ? ordered_json(*m.signed_distance) : ordered_json();
    row["direction"] = std::string(to_string(m.direction));
    rows.push_back(std::move(row));
  }
  j["mismatches"] = std::move(rows);
  j["mismatches_by_country"] = report.mismatches_by_country;
  return j.dump(2) + "\n";
}

std::string format_repeat_offenders(const RepeatOffenders& offenders) {
  std::ostringstream out;
  out << std::left << std::setw(28) << "Country" << "Misclassifications" << '\n';
  for (const auto& [country, n] : offenders.twice) out << std::setw(28) << country << "twice" << '\n';
  for (const auto& [country, n] : offenders.more_than_twice) {
    out << std::setw(28) << country << "more than twice (" << n << ")" << '\n';
  }
  return out.str();
}

}  // namespace lad
