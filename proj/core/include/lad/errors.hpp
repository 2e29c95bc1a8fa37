#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace lad {

/// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column,
             const std::string& message);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

/// Dataset contents violate a contract (duplicate key, unknown label,
/// nothing labeled, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Two records of opposite binary class cannot be told apart.
class ContradictionError : public Error {
 public:
  ContradictionError(std::string first, std::string second,
                     std::optional<int> iteration = std::nullopt);

  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }
  /// Cascade stage (cumulative class boundary) where the clash appeared.
  std::optional<int> iteration() const noexcept { return iteration_; }

  ContradictionError at_iteration(int k) const;

 private:
  std::string first_;
  std::string second_;
  std::optional<int> iteration_;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when full positive coverage was demanded and could not be reached.
class CoverageError : public Error {
 public:
  using Error::Error;
};

}  // namespace lad
