#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "lad/indicator.hpp"
#include "lad/literal.hpp"
#include "lad/record.hpp"

namespace lad {

/// A record seen through one binary problem. The record must outlive it.
struct LabeledRecord {
  const CountryRecord* record = nullptr;
  bool positive = false;
};

/// Thresholds between every pair of adjacent distinct values whose classes
/// differ (or where either value is shared by both classes). Placed at the
/// midpoint. Empty when only one class carries the indicator.
/// Throws DataError when no record has a value for the indicator.
std::vector<CutPoint> candidate_cutpoints(std::span<const LabeledRecord> records,
                                          std::string_view indicator);

/// True when the cut-point gives the two records different Boolean encodings.
bool distinguishes(const CutPoint& cut, const CountryRecord& a, const CountryRecord& b);

enum class CoverStrategy { Automatic, Exact, Greedy };

struct MinimizeOptions {
  CoverStrategy strategy = CoverStrategy::Automatic;
  /// Automatic switches from exact to greedy above this many
  /// (pair x candidate) incidence cells.
  std::size_t exact_cell_limit = 2000;
};

/// Smallest subset of `candidates` that still separates every
/// positive/negative pair. Exact branch-and-bound or greedy set cover.
/// The result keeps the candidates' relative order.
/// Throws ContradictionError when some opposite-class pair is not separated
/// by the full candidate set.
std::vector<CutPoint> minimize_cutpoints(std::span<const CutPoint> candidates,
                                         std::span<const LabeledRecord> records,
                                         const MinimizeOptions& options = {});

struct BinaryRow {
  std::size_t record = 0;  // index into the binarized input
  bool positive = false;
  boost::dynamic_bitset<> at_least;  // bit j: value >= cut j
  boost::dynamic_bitset<> at_most;   // bit j: value <= cut j
};

/// Boolean encoding of a labeled record set. Literal 2j is "cut j, >=" and
/// literal 2j+1 is "cut j, <=". A missing value clears both bits.
class BinaryView {
 public:
  BinaryView(std::vector<CutPoint> cutpoints, std::vector<BinaryRow> rows);

  std::span<const CutPoint> cutpoints() const noexcept { return cutpoints_; }
  std::span<const BinaryRow> rows() const noexcept { return rows_; }

  std::size_t literal_count() const noexcept { return 2 * cutpoints_.size(); }
  Literal literal(std::size_t index) const;
  std::optional<std::size_t> literal_index(const Literal& literal) const;

  /// Rows satisfying a literal.
  const boost::dynamic_bitset<>& column(std::size_t literal) const { return columns_[literal]; }
  const boost::dynamic_bitset<>& positives() const noexcept { return positives_; }
  std::size_t positive_count() const noexcept { return positives_.count(); }
  std::size_t negative_count() const noexcept { return rows_.size() - positives_.count(); }

 private:
  std::vector<CutPoint> cutpoints_;
  std::vector<BinaryRow> rows_;
  std::vector<boost::dynamic_bitset<>> columns_;
  boost::dynamic_bitset<> positives_;
};

BinaryView binarize(std::span<const LabeledRecord> records, std::vector<CutPoint> cutpoints);

/// "indicator,threshold" lines sorted by (indicator, threshold).
std::string format_cutpoints(std::span<const CutPoint> cutpoints);
std::vector<CutPoint> parse_cutpoints(std::istream& in,
                                      const IndicatorRegistry& registry = IndicatorRegistry::builtin(),
                                      std::string_view source = "<cutpoints>");

}  // namespace lad
