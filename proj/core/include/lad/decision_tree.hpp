#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lad/cascade.hpp"
#include "lad/indicator.hpp"
#include "lad/rating_scale.hpp"

namespace lad {

// Text form of a cascade, one class per block:
//
//   # comment
//   AAA   (U>=73.715, G>=52456.1), OR (U<=90.02, C>=-9.54, G>=40460.8)
//   BB    No case
//
// A block starts with a rating label; lines that do not start with a label
// continue the previous block. Whitespace is insignificant. Inside a pattern
// literals are separated by "," or "AND". See docs/decision_tree_format.md.

enum class ImportMode {
  Strict,   // reject anything off-grammar
  Lenient,  // repair known typesetting damage and log each repair
};

struct ImportNote {
  enum class Kind { Repair, Suspicious, MissingStage };
  Kind kind;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;
};

std::string_view to_string(ImportNote::Kind kind);

struct ImportedTree {
  CascadeModel model;
  std::vector<ImportNote> notes;
};

/// Throws ParseError with line/column on unknown codes, malformed literals,
/// unknown or repeated labels.
ImportedTree import_decision_tree(std::string_view text, const RatingScale& scale, int year,
                                  ImportMode mode = ImportMode::Strict,
                                  const IndicatorRegistry& registry = IndicatorRegistry::builtin(),
                                  std::string_view source = "<tree>");

std::string export_decision_tree(const CascadeModel& model);

/// "(A>=1, B<=2), OR (C>=3)" or "No case".
std::string format_dnf(const ClassDnf& dnf);

}  // namespace lad
