#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "lad/record.hpp"

namespace lad {

/// A threshold on one indicator that separates positive from negative
/// observations.
struct CutPoint {
  std::string indicator;
  double threshold = 0.0;

  friend auto operator<=>(const CutPoint&, const CutPoint&) = default;
  friend bool operator==(const CutPoint&, const CutPoint&) = default;
};

enum class Direction : unsigned char {
  AtLeast,  // value >= threshold
  AtMost,   // value <= threshold
};

std::string_view to_string(Direction direction);

/// A directed comparison against a threshold. Both directions are inclusive.
struct Literal {
  std::string indicator;
  Direction direction = Direction::AtLeast;
  double threshold = 0.0;

  /// nullopt when the record has no value for the indicator.
  std::optional<bool> evaluate(const CountryRecord& record) const;
  /// Missing values never certify a condition.
  bool holds(const CountryRecord& record) const { return evaluate(record).value_or(false); }

  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Renders "CODE>=VALUE" / "CODE<=VALUE".
std::string format_literal(const Literal& literal);

}  // namespace lad
