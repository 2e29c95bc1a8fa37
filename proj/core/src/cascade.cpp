#include "lad/cascade.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lad/errors.hpp"
#include "text.hpp"

#ifndef LADRATING_VERSION
#define LADRATING_VERSION "0.0.0"
#endif

namespace lad {

std::string_view library_version() { return LADRATING_VERSION; }

bool CascadeModel::fully_covered() const noexcept {
  return std::all_of(log.begin(), log.end(), [](const StageLog& s) { return s.complete(); });
}

namespace {

void check_separable(std::span<const CutPoint> cuts, std::span<const LabeledRecord> records) {
  for (const auto& p : records) {
    if (!p.positive) continue;
    for (const auto& n : records) {
      if (n.positive) continue;
      const bool separated = std::any_of(cuts.begin(), cuts.end(), [&](const CutPoint& c) {
        return distinguishes(c, *p.record, *n.record);
      });
      if (!separated) throw ContradictionError(p.record->key(), n.record->key());
    }
  }
}

std::string describe_floor(double floor) {
  return floor <= 0.0 ? std::string("one record") : text::format_number(floor);
}

}  // namespace

CascadeModel train_cascade(const Dataset& dataset, const TrainOptions& options, int year) {
  options.mining.check();
  const auto& scale = dataset.scale();
  const auto indices = dataset.training();

  std::vector<CountryRecord> training;
  std::vector<int> ranks;
  std::set<int> classes;
  for (auto i : indices) {
    const auto& record = dataset[i];
    auto rank = scale.rank(*record.rating);
    if (!rank) throw DataError(record.key() + ": rating '" + *record.rating + "' is not on the scale");
    training.push_back(record);
    ranks.push_back(*rank);
    classes.insert(*rank);
  }
  if (classes.size() < 2) {
    throw DataError("training needs records from at least two rating classes");
  }

  std::vector<std::string> indicators;
  for (const auto& indicator : options.registry->indicators()) {
    const bool present = std::any_of(training.begin(), training.end(), [&](const CountryRecord& r) {
      return r.values.count(indicator.code) > 0;
    });
    if (present) indicators.push_back(indicator.code);
  }

  CascadeModel model;
  model.scale = scale;
  model.year = year;
  model.provenance = {"trained", options.mining,
                      dataset_fingerprint(Dataset(scale, training)), std::string(library_version())};

  for (int k = 1; k < scale.worst_rank(); ++k) {
    StageLog log;
    log.rank = k;
    std::vector<LabeledRecord> labeled;
    labeled.reserve(training.size());
    for (std::size_t i = 0; i < training.size(); ++i) labeled.push_back({&training[i], ranks[i] <= k});
    log.positives = static_cast<std::size_t>(
        std::count_if(labeled.begin(), labeled.end(), [](const LabeledRecord& r) { return r.positive; }));
    log.negatives = labeled.size() - log.positives;

    ClassDnf stage{k, {}};
    const bool class_present = classes.count(k) > 0;
    if (log.positives == 0 || log.negatives == 0 || !class_present) {
      log.notes.push_back(log.positives == 0   ? "no positive records; stage left empty"
                          : log.negatives == 0 ? "no negative records; stage left empty"
                                               : "no " + scale.label(k) + " records; stage left empty");
      model.stages.push_back(std::move(stage));
      model.log.push_back(std::move(log));
      continue;
    }

    try {
      if (options.fixed_cutpoints) {
        log.candidate_cutpoints = options.fixed_cutpoints->size();
        log.cutpoints = *options.fixed_cutpoints;
        check_separable(log.cutpoints, labeled);
      } else {
        std::vector<CutPoint> candidates;
        for (const auto& code : indicators) {
          auto cuts = candidate_cutpoints(labeled, code);
          candidates.insert(candidates.end(), cuts.begin(), cuts.end());
        }
        log.candidate_cutpoints = candidates.size();
        log.cutpoints = minimize_cutpoints(candidates, labeled, options.minimize);
      }
    } catch (const ContradictionError& e) {
      throw e.at_iteration(k);
    }

    const auto view = binarize(labeled, log.cutpoints);
    const auto patterns = enumerate_patterns(view, options.mining);
    auto selection = select_dnf(patterns, view, options.mining, k);
    log.relaxations = selection.relaxations;
    for (double floor : selection.relaxations) {
      log.notes.push_back("prevalence floor relaxed to " + describe_floor(floor));
    }
    if (!selection.target_met) log.notes.push_back("coverage target not met; stage ships partial");
    for (auto row : selection.uncovered) {
      log.uncovered.push_back(labeled[view.rows()[row].record].record->key());
    }
    model.stages.push_back(std::move(selection.dnf));
    model.log.push_back(std::move(log));
  }
  return model;
}

std::string Verdict::label(const RatingScale& scale) const {
  return rank ? scale.label(*rank) : std::string("Unclassified");
}

Verdict classify(const CascadeModel& model, const CountryRecord& record) {
  for (const auto& stage : model.stages) {
    if (auto pattern = stage.first_match(record)) {
      return {stage.rank, stage.rank, pattern, false, false};
    }
  }
  const int worst = model.scale.worst_rank();
  if (model.scale.fallback_policy() == FallbackPolicy::FallbackToLast) {
    return {worst, 0, std::nullopt, true, false};
  }
  if (model.residual) {
    if (auto pattern = model.residual->first_match(record)) return {worst, worst, pattern, false, false};
  }
  return {};
}

Verdict suggest_rating(const CascadeModel& model, const CountryRecord& record) {
  Verdict verdict = classify(model, record);
  verdict.suggested = true;
  return verdict;
}

std::string dataset_fingerprint(const Dataset& dataset) {
  std::ostringstream canonical;
  write_dataset(canonical, dataset);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical.str()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace lad
