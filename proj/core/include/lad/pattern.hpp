#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lad/binarizer.hpp"
#include "lad/literal.hpp"
#include "lad/record.hpp"

namespace lad {

/// Training-set statistics of a pattern.
struct Coverage {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t total_positives = 0;

  double prevalence() const noexcept;
  /// 1 when nothing is covered.
  double homogeneity() const noexcept;

  friend bool operator==(const Coverage&, const Coverage&) = default;
};

/// Conjunction of literals. Imported patterns carry no coverage.
struct Pattern {
  std::vector<Literal> literals;
  std::optional<Coverage> coverage;

  std::size_t degree() const noexcept { return literals.size(); }
  bool matches(const CountryRecord& record) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// True iff every literal holds; any missing indicator makes it false.
bool pattern_matches(const Pattern& pattern, const CountryRecord& record);

/// Literals on the same indicator with the same direction make a pattern
/// redundant; a >= and a <= on one indicator form an interval and are fine.
bool is_redundant(std::span<const Literal> literals);

/// Disjunction of patterns describing cumulative class `rank` (classes
/// 1..rank are positive).
struct ClassDnf {
  int rank = 0;
  std::vector<Pattern> patterns;

  bool empty() const noexcept { return patterns.empty(); }
  bool matches(const CountryRecord& record) const;
  /// Index of the first accepting pattern.
  std::optional<std::size_t> first_match(const CountryRecord& record) const;

  friend bool operator==(const ClassDnf&, const ClassDnf&) = default;
};

enum class PrevalenceMode {
  PerPattern,  // every pattern must reach min_prevalence
  PerDnf,      // the DNF as a whole must cover min_prevalence of positives
};

std::string_view to_string(PrevalenceMode mode);

struct MiningConfig {
  int max_degree = 3;
  double min_prevalence = 0.70;
  double min_homogeneity = 1.0;
  double dnf_coverage_target = 1.0;
  /// Prevalence floors tried in order when the coverage target is missed.
  /// 0 means "covers at least one positive".
  std::vector<double> relaxation_schedule{0.40, 0.20, 0.0};
  PrevalenceMode prevalence_mode = PrevalenceMode::PerPattern;
  /// Drop patterns that have a proper sub-pattern meeting both thresholds.
  bool prime_only = true;

  /// Throws std::invalid_argument on out-of-range values.
  void check() const;

  friend bool operator==(const MiningConfig&, const MiningConfig&) = default;
};

/// All conjunctions of degree <= max_degree over the view's literal pool that
/// cover at least one positive and meet the prevalence and homogeneity
/// thresholds. Ordered by degree, then by literal index.
/// Throws DataError when the view has no positive rows.
std::vector<Pattern> enumerate_patterns(const BinaryView& view, const MiningConfig& config);

/// Same, with an explicit prevalence floor (used by the relaxation steps).
std::vector<Pattern> enumerate_patterns(const BinaryView& view, const MiningConfig& config,
                                        double min_prevalence);

struct DnfSelection {
  ClassDnf dnf;
  /// Prevalence floors that had to be applied after the configured one.
  std::vector<double> relaxations;
  /// View rows of positives no selected pattern covers.
  std::vector<std::size_t> uncovered;
  bool target_met = false;
};

/// Greedy minimum cover of the positive rows. Picks the pattern covering the
/// most uncovered positives (ties: higher homogeneity, fewer literals, lower
/// literal indices) until the coverage target is met. Walks the relaxation
/// schedule when it is not.
DnfSelection select_dnf(std::span<const Pattern> patterns, const BinaryView& view,
                        const MiningConfig& config, int rank = 0);

/// Rows of `view` a pattern covers. Every literal must be a view literal.
boost::dynamic_bitset<> covered_rows(const Pattern& pattern, const BinaryView& view);

}  // namespace lad
