#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lad/cascade.hpp"
#include "lad/dataset.hpp"
#include "lad/rating_scale.hpp"

namespace lad {

/// One model output next to the agency's label.
struct Prediction {
  std::string country;
  int year = 0;
  Split split = Split::None;
  std::optional<std::string> model;  // nullopt: unclassified
  std::string observed;
};

enum class MismatchDirection {
  ModelBetter,  // the agency rated the country worse than the model
  ModelWorse,
  Undefined,    // unclassified
};

std::string_view to_string(MismatchDirection direction);

struct Mismatch {
  std::string country;
  int year = 0;
  Split split = Split::None;
  std::optional<std::string> model;
  std::string observed;
  /// observed rank - model rank; positive means the model rated better.
  std::optional<int> signed_distance;
  MismatchDirection direction = MismatchDirection::Undefined;
};

struct EvaluationReport {
  int year = 0;
  std::size_t labeled = 0;
  std::size_t matches = 0;
  std::optional<double> match_ratio_train;
  std::optional<double> match_ratio_test;
  double match_ratio_overall = 0.0;
  /// Sorted by |signed_distance| descending; unclassified rows last.
  std::vector<Mismatch> mismatches;
  double model_better_share = 0.0;
  double model_worse_share = 0.0;
  std::size_t unclassified = 0;
  std::map<std::string, std::size_t> mismatches_by_country;
};

/// Scores a model on the labeled records. Throws DataError when there are none.
EvaluationReport evaluate(const CascadeModel& model, const Dataset& dataset);

/// Scores precomputed predictions. Throws DataError when empty or when a
/// label is not on the scale.
EvaluationReport evaluate_predictions(std::span<const Prediction> predictions,
                                      const RatingScale& scale, int year = 0);

struct RepeatOffenders {
  std::vector<std::pair<std::string, std::size_t>> twice;
  std::vector<std::pair<std::string, std::size_t>> more_than_twice;

  bool empty() const noexcept { return twice.empty() && more_than_twice.empty(); }
};

/// Countries mismatched at least twice across yearly reports.
/// With fewer than two reports only within-year repeats can qualify.
RepeatOffenders repeat_offenders(std::span<const EvaluationReport> reports);

std::string format_report_text(const EvaluationReport& report);
std::string format_report_json(const EvaluationReport& report);
std::string format_repeat_offenders(const RepeatOffenders& offenders);

}  // namespace lad
