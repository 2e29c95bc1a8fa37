#include "lad/rating_scale.hpp"

#include <stdexcept>
#include <unordered_set>

namespace lad {

std::string_view to_string(FallbackPolicy policy) {
  switch (policy) {
    case FallbackPolicy::FallbackToLast: return "fallback-to-last";
    case FallbackPolicy::Unclassified: return "unclassified";
  }
  return "fallback-to-last";
}

std::optional<FallbackPolicy> parse_fallback_policy(std::string_view text) {
  if (text == "fallback-to-last" || text == "last") return FallbackPolicy::FallbackToLast;
  if (text == "unclassified") return FallbackPolicy::Unclassified;
  return std::nullopt;
}

RatingScale::RatingScale(std::vector<std::string> labels, FallbackPolicy policy)
    : labels_(std::move(labels)), policy_(policy) {
  if (labels_.size() < 2) {
    throw std::invalid_argument("a rating scale needs at least two classes");
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw std::invalid_argument("empty rating label");
    if (!seen.insert(label).second) {
      throw std::invalid_argument("duplicate rating label '" + label + "'");
    }
  }
}

RatingScale RatingScale::fitch(FallbackPolicy policy) {
  return RatingScale({"AAA", "AAP", "AA", "AAM", "AP", "A", "AM", "BBBP", "BBB", "BBBM", "BBP",
                      "BB", "BBM", "BP", "B", "BM"},
                     policy);
}

std::optional<int> RatingScale::rank(std::string_view label) const noexcept {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

const std::string& RatingScale::label(int rank) const {
  if (rank < 1 || rank > static_cast<int>(labels_.size())) {
    throw std::out_of_range("rating rank " + std::to_string(rank) + " outside scale");
  }
  return labels_[static_cast<std::size_t>(rank - 1)];
}

RatingScale RatingScale::with_fallback(FallbackPolicy policy) const {
  RatingScale copy = *this;
  copy.policy_ = policy;
  return copy;
}

}  // namespace lad
