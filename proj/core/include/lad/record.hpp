#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace lad {

/// Indicator code -> value. An absent key is a missing value.
using IndicatorValues = std::map<std::string, double, std::less<>>;

/// One country-year observation.
struct CountryRecord {
  std::string country;
  int year = 0;
  IndicatorValues values;
  std::optional<std::string> rating;

  std::optional<double> value(std::string_view code) const;
  bool is_rated() const noexcept { return rating.has_value(); }
  /// "country/year", used in diagnostics.
  std::string key() const;

  friend bool operator==(const CountryRecord&, const CountryRecord&) = default;
};

}  // namespace lad
