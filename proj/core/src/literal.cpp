#include "lad/literal.hpp"

#include "lad/errors.hpp"
#include "text.hpp"

namespace lad {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

ContradictionError::ContradictionError(std::string first, std::string second,
                                       std::optional<int> iteration)
    : Error("contradiction: " + first + " and " + second +
            " have identical Boolean encodings but opposite classes" +
            (iteration ? " (stage " + std::to_string(*iteration) + ")" : std::string{})),
      first_(std::move(first)),
      second_(std::move(second)),
      iteration_(iteration) {}

ContradictionError ContradictionError::at_iteration(int k) const {
  return ContradictionError(first_, second_, k);
}

std::optional<double> CountryRecord::value(std::string_view code) const {
  auto it = values.find(code);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

std::string CountryRecord::key() const { return country + "/" + std::to_string(year); }

std::string_view to_string(Direction direction) {
  return direction == Direction::AtLeast ? ">=" : "<=";
}

std::optional<bool> Literal::evaluate(const CountryRecord& record) const {
  auto v = record.value(indicator);
  if (!v) return std::nullopt;
  return direction == Direction::AtLeast ? *v >= threshold : *v <= threshold;
}

std::string format_literal(const Literal& literal) {
  std::string out = literal.indicator;
  out += to_string(literal.direction);
  out += text::format_number(literal.threshold);
  return out;
}

}  // namespace lad
