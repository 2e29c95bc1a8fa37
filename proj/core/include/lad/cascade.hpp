#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lad/binarizer.hpp"
#include "lad/dataset.hpp"
#include "lad/pattern.hpp"
#include "lad/rating_scale.hpp"

namespace lad {

/// Library version string written into model provenance.
std::string_view library_version();

struct Provenance {
  std::string origin;  // "trained" or "imported"
  MiningConfig config;
  std::string dataset_fingerprint;
  std::string tool_version;
};

/// What happened while training one stage.
struct StageLog {
  int rank = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t candidate_cutpoints = 0;
  std::vector<CutPoint> cutpoints;
  std::vector<double> relaxations;
  std::vector<std::string> uncovered;  // record keys
  std::vector<std::string> notes;

  bool complete() const noexcept { return uncovered.empty(); }
};

/// Ordered binary stages over a rating scale. Stage k (1-based) accepts
/// records of classes 1..k. The worst class has no trained stage and is
/// reached through the scale's fallback policy.
struct CascadeModel {
  RatingScale scale = RatingScale::fitch();
  int year = 0;
  std::vector<ClassDnf> stages;  // ranks 1 .. scale.size()-1
  /// Published trees sometimes list a row for the worst class. It is kept
  /// for export and consulted only under FallbackPolicy::Unclassified.
  std::optional<ClassDnf> residual;
  Provenance provenance;
  std::vector<StageLog> log;

  const ClassDnf& stage(int rank) const { return stages.at(static_cast<std::size_t>(rank - 1)); }
  bool fully_covered() const noexcept;
};

struct TrainOptions {
  MiningConfig mining;
  MinimizeOptions minimize;
  /// Use these thresholds verbatim instead of learning cut-points per stage.
  std::optional<std::vector<CutPoint>> fixed_cutpoints;
  const IndicatorRegistry* registry = &IndicatorRegistry::builtin();
};

/// Trains one stage per cumulative class boundary on Dataset::training().
/// A stage whose own class has no training records stays empty: its
/// positives are those of an earlier stage, which already claims them.
/// Throws DataError when fewer than two classes are present and
/// ContradictionError (carrying the stage) when a stage is inconsistent.
CascadeModel train_cascade(const Dataset& dataset, const TrainOptions& options, int year);

/// Outcome of running a record through the cascade.
struct Verdict {
  std::optional<int> rank;  // nullopt: unclassified
  int stage = 0;            // accepting stage, 0 if none
  std::optional<std::size_t> pattern;
  bool fallback = false;
  bool suggested = false;

  bool classified() const noexcept { return rank.has_value(); }
  /// Label or "Unclassified".
  std::string label(const RatingScale& scale) const;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// First stage whose DNF accepts the record wins.
Verdict classify(const CascadeModel& model, const CountryRecord& record);

/// Rating suggestion for an unrated record; same rule as classify. An
/// observed rating, if any, is ignored.
Verdict suggest_rating(const CascadeModel& model, const CountryRecord& record);

/// Stable 64-bit FNV-1a hex digest of the canonical form of the records a
/// model is trained on.
std::string dataset_fingerprint(const Dataset& dataset);

struct IndicatorCount {
  std::string indicator;
  std::size_t occurrences = 0;  // literal occurrences
  std::size_t patterns = 0;     // patterns containing it
  double share = 0.0;           // patterns / total patterns in the group

  friend bool operator==(const IndicatorCount&, const IndicatorCount&) = default;
};

struct KeyVariableGroup {
  std::string name;  // "AAA" or "AAP-AAM"
  int first_rank = 0;
  int last_rank = 0;
  std::size_t pattern_count = 0;
  std::vector<IndicatorCount> indicators;  // by occurrences desc, then code
};

struct KeyVariableReport {
  std::vector<KeyVariableGroup> stages;  // one per non-empty stage
  std::vector<KeyVariableGroup> groups;  // first class alone, then triples

  bool empty() const noexcept { return stages.empty() && groups.empty(); }
};

KeyVariableReport key_variables(const CascadeModel& model);
std::string format_key_variables(const KeyVariableReport& report);

}  // namespace lad
