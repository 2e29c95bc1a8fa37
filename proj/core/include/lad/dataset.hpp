#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lad/indicator.hpp"
#include "lad/literal.hpp"
#include "lad/rating_scale.hpp"
#include "lad/record.hpp"

namespace lad {

enum class Split : std::uint8_t { None, Train, Test };

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view text);

/// Immutable collection of country-year records on one rating scale.
class Dataset {
 public:
  explicit Dataset(RatingScale scale, std::vector<CountryRecord> records = {},
                   std::vector<Split> split = {});

  const RatingScale& scale() const noexcept { return scale_; }
  std::span<const CountryRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const CountryRecord& operator[](std::size_t i) const { return records_[i]; }

  bool has_split() const noexcept { return !split_.empty(); }
  /// Split::None when the dataset has no split or the record is unrated.
  Split split_of(std::size_t i) const noexcept;

  /// Indices of records that carry an observed rating.
  std::vector<std::size_t> labeled() const;
  /// Records a model should be trained on: the train part of the split, or
  /// every labeled record when there is no split.
  std::vector<std::size_t> training() const;
  std::vector<std::size_t> in_split(Split part) const;

  Dataset with_split(std::vector<Split> split) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  RatingScale scale_;
  std::vector<CountryRecord> records_;
  std::vector<Split> split_;
};

struct LoadOptions {
  char delimiter = ',';
  const IndicatorRegistry* registry = &IndicatorRegistry::builtin();
  int min_year = 1900;
  int max_year = 2100;
  /// Rows whose population column is below this are dropped. Off when unset.
  std::optional<double> min_population;
  std::string population_column = "population";
  std::string source_name = "<input>";
};

struct LoadResult {
  Dataset dataset;
  std::vector<std::string> warnings;
};

/// Reads delimiter-separated text with a header naming the country, year and
/// rating columns plus any indicator codes. An optional "split" column holds
/// train/test. Empty cells are missing values.
LoadResult load_dataset(std::istream& in, const RatingScale& scale,
                        const LoadOptions& options = {});

/// Canonical tabular form; load_dataset reads it back to an equal Dataset.
void write_dataset(std::ostream& out, const Dataset& dataset,
                   const IndicatorRegistry& registry = IndicatorRegistry::builtin(),
                   char delimiter = ',');

struct Diagnostic {
  enum class Kind { DuplicateKey, UnknownRating, YearOutOfRange, Contradiction };
  Kind kind;
  std::string message;
  std::vector<std::size_t> records;
};

struct ValidateOptions {
  int min_year = 1900;
  int max_year = 2100;
  /// When given, contradictions are judged on the Boolean vectors these
  /// cut-points induce. Otherwise identical raw value maps are compared.
  std::optional<std::vector<CutPoint>> cutpoints;
};

std::vector<Diagnostic> validate(const Dataset& dataset, const ValidateOptions& options = {});

/// Stratified, seeded train/test partition of the labeled records. Every
/// class with members keeps at least one of them in the training part.
Dataset split_dataset(const Dataset& dataset, double train_fraction, std::uint64_t seed);

}  // namespace lad
