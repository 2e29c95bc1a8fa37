#include "lad/indicator.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace lad {

IndicatorRegistry::IndicatorRegistry(std::vector<Indicator> indicators)
    : indicators_(std::move(indicators)) {
  std::unordered_set<std::string> seen;
  for (const auto& indicator : indicators_) {
    if (indicator.code.empty()) {
      throw std::invalid_argument("indicator code must not be empty");
    }
    if (!seen.insert(indicator.code).second) {
      throw std::invalid_argument("duplicate indicator code '" + indicator.code + "'");
    }
  }
}

const IndicatorRegistry& IndicatorRegistry::builtin() {
  // Ranges are generous sanity bounds, not economic claims.
  static const IndicatorRegistry registry({
      {"C", "Cash surplus/deficit", "% of GDP", -30, 30},
      {"EX", "Exports of goods and services", "% of GDP", 0, 500},
      {"G", "GDP per capita", "current US$", 0, 500000},
      {"IM", "Imports of goods and services", "% of GDP", 0, 500},
      {"RE", "Revenue, excluding grants", "% of GDP", 0, 100},
      {"SD", "Short-term debt", "% of total reserves", 0, 10000},
      {"TD", "Total debt service", "% of exports of goods, services and primary income", 0, 500},
      {"CG", "Central government debt, total", "% of GDP", 0, 400},
      {"E", "Expense", "% of GDP", 0, 100},
      {"GG", "GDP per capita growth", "annual %", -50, 50},
      {"GS", "Gross savings", "% of GDP", -50, 100},
      {"IV", "Industry, value added", "% of GDP", 0, 100},
      {"I", "Inflation, consumer prices", "annual %", -50, 10000},
      {"PPP", "PPP conversion factor, GDP", "LCU per international $", 0, 100000},
      {"R", "Total reserves (includes gold)", "current US$", 1e6, 1e13},
      {"U", "Urban population", "% of total", 0, 100},
      {"PG", "Population growth", "annual %", -10, 10},
      {"PA", "Population ages 0-14", "% of total", 0, 60},
      {"UN", "Unemployment, male (modelled ILO estimate)", "% of male labor force", 0, 100},
      {"M", "Mobile cellular subscriptions", "per 100 people", 0, 400},
  });
  return registry;
}

const Indicator* IndicatorRegistry::find(std::string_view code) const noexcept {
  auto it = std::find_if(indicators_.begin(), indicators_.end(),
                         [&](const Indicator& i) { return i.code == code; });
  return it == indicators_.end() ? nullptr : &*it;
}

std::optional<std::size_t> IndicatorRegistry::position(std::string_view code) const noexcept {
  for (std::size_t i = 0; i < indicators_.size(); ++i) {
    if (indicators_[i].code == code) return i;
  }
  return std::nullopt;
}

}  // namespace lad
