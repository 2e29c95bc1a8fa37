#include "lad/set_cover.hpp"

#include <algorithm>
#include <limits>

namespace lad {

std::vector<std::size_t> greedy_set_cover(std::span<const ElementSet> sets, const ElementSet& universe) {
  std::vector<std::size_t> chosen;
  ElementSet uncovered = universe;
  while (uncovered.any()) {
    std::size_t best = sets.size();
    std::size_t best_gain = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const std::size_t gain = (sets[s] & uncovered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    if (best_gain == 0) break;
    chosen.push_back(best);
    uncovered -= sets[best];
  }
  return chosen;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(std::span<const ElementSet> sets, std::vector<std::size_t> incumbent)
      : sets_(sets), best_(std::move(incumbent)) {}

  std::vector<std::size_t> solve(const ElementSet& uncovered) {
    std::vector<std::size_t> chosen;
    search(uncovered, chosen);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void search(const ElementSet& uncovered, std::vector<std::size_t>& chosen) {
    if (uncovered.none()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + 1 >= best_.size()) return;

    std::size_t max_gain = 0;
    for (const auto& set : sets_) max_gain = std::max(max_gain, (set & uncovered).count());
    if (max_gain == 0) return;
    const std::size_t lower_bound = (uncovered.count() + max_gain - 1) / max_gain;
    if (chosen.size() + lower_bound >= best_.size()) return;

    // Branch on the element with the fewest covering sets.
    std::size_t pivot = ElementSet::npos;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (auto e = uncovered.find_first(); e != ElementSet::npos; e = uncovered.find_next(e)) {
      std::size_t n = 0;
      for (const auto& set : sets_) n += set.test(e) ? 1 : 0;
      if (n < fewest) {
        fewest = n;
        pivot = e;
      }
    }

    std::vector<std::pair<std::size_t, std::size_t>> options;  // (gain, index)
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (sets_[s].test(pivot)) options.emplace_back((sets_[s] & uncovered).count(), s);
    }
    std::stable_sort(options.begin(), options.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [gain, s] : options) {
      chosen.push_back(s);
      search(uncovered - sets_[s], chosen);
      chosen.pop_back();
    }
  }

  std::span<const ElementSet> sets_;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<std::size_t> exact_set_cover(std::span<const ElementSet> sets, const ElementSet& universe) {
  ElementSet coverable(universe.size());
  for (const auto& set : sets) coverable |= set;
  coverable &= universe;

  auto greedy = greedy_set_cover(sets, coverable);
  if (greedy.size() <= 1) {
    std::sort(greedy.begin(), greedy.end());
    return greedy;
  }
  return BranchAndBound(sets, std::move(greedy)).solve(coverable);
}

}  // namespace lad
