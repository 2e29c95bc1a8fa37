#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lad {

/// What a cascade does with a record that no stage accepts.
enum class FallbackPolicy {
  FallbackToLast,  // assign the worst class
  Unclassified,    // report the record as unclassified
};

std::string_view to_string(FallbackPolicy policy);
std::optional<FallbackPolicy> parse_fallback_policy(std::string_view text);

/// Ordered rating labels. Rank 1 is the safest class; a smaller rank is a
/// better rating.
class RatingScale {
 public:
  explicit RatingScale(std::vector<std::string> labels,
                       FallbackPolicy policy = FallbackPolicy::FallbackToLast);

  /// AAA, AAP, AA, AAM, AP, A, AM, BBBP, BBB, BBBM, BBP, BB, BBM, BP, B, BM.
  /// P and M stand for the agency's plus and minus notches.
  static RatingScale fitch(FallbackPolicy policy = FallbackPolicy::FallbackToLast);

  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const std::string> labels() const noexcept { return labels_; }

  /// 1-based rank of a label, if it belongs to the scale.
  std::optional<int> rank(std::string_view label) const noexcept;
  bool contains(std::string_view label) const noexcept { return rank(label).has_value(); }

  /// Label of a 1-based rank. Throws std::out_of_range.
  const std::string& label(int rank) const;
  const std::string& worst() const noexcept { return labels_.back(); }
  int worst_rank() const noexcept { return static_cast<int>(labels_.size()); }

  FallbackPolicy fallback_policy() const noexcept { return policy_; }
  RatingScale with_fallback(FallbackPolicy policy) const;

  friend bool operator==(const RatingScale&, const RatingScale&) = default;

 private:
  std::vector<std::string> labels_;
  FallbackPolicy policy_;
};

}  // namespace lad
