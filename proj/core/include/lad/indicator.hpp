#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lad {

/// One economic variable a country is described by.
struct Indicator {
  std::string code;
  std::string description;
  std::string unit;
  // Values outside [plausible_min, plausible_max] are flagged when reading
  // published trees; they never reject data.
  double plausible_min = -1e300;
  double plausible_max = 1e300;
};

/// Ordered set of indicators with unique codes.
class IndicatorRegistry {
 public:
  explicit IndicatorRegistry(std::vector<Indicator> indicators);

  /// The twenty World Bank variables the rating trees are expressed in.
  static const IndicatorRegistry& builtin();

  std::span<const Indicator> indicators() const noexcept { return indicators_; }
  std::size_t size() const noexcept { return indicators_.size(); }

  const Indicator* find(std::string_view code) const noexcept;
  bool contains(std::string_view code) const noexcept { return find(code) != nullptr; }
  std::optional<std::size_t> position(std::string_view code) const noexcept;

 private:
  std::vector<Indicator> indicators_;
};

}  // namespace lad
