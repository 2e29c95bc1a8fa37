#include "lad/decision_tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

#include "lad/errors.hpp"
#include "text.hpp"

namespace lad {

std::string_view to_string(ImportNote::Kind kind) {
  switch (kind) {
    case ImportNote::Kind::Repair: return "repair";
    case ImportNote::Kind::Suspicious: return "suspicious";
    case ImportNote::Kind::MissingStage: return "missing-stage";
  }
  return "repair";
}

namespace {

struct Token {
  enum class Kind { Open, Close, Comma, Or, And, NoCase, Literal };
  Kind kind;
  std::size_t line;
  std::size_t column;
  // Literal parts.
  std::string code{};
  Direction direction = Direction::AtLeast;
  std::string number{};
  std::size_t number_column = 0;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_number_char(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.' || c == '-' || c == '+' ||
         c == 'e' || c == 'E' || c == '/';
}

// "+" -> 'P', "-" or "−" (E2 88 92) -> 'M', as in "AA+" for AAP.
std::pair<char, std::size_t> notch_suffix(std::string_view s) {
  if (s.starts_with('+')) return {'P', 1};
  if (s.starts_with('-')) return {'M', 1};
  if (s.starts_with("\xE2\x88\x92")) return {'M', 3};
  return {'\0', 0};
}

// ">=", "<=", "≥" (E2 89 A5), "≤" (E2 89 A4). Returns consumed length or 0.
std::size_t match_operator(std::string_view s, std::size_t i, Direction& direction) {
  if (s.substr(i, 2) == ">=") { direction = Direction::AtLeast; return 2; }
  if (s.substr(i, 2) == "<=") { direction = Direction::AtMost; return 2; }
  if (s.substr(i, 3) == "\xE2\x89\xA5") { direction = Direction::AtLeast; return 3; }
  if (s.substr(i, 3) == "\xE2\x89\xA4") { direction = Direction::AtMost; return 3; }
  return 0;
}

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

class TreeParser {
 public:
  TreeParser(const RatingScale& scale, ImportMode mode, const IndicatorRegistry& registry,
             std::string_view source)
      : scale_(scale), mode_(mode), registry_(registry), source_(source) {}

  ImportedTree parse(std::string_view text, int year) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
      handle_line(line, line_no);
      if (end == text.size()) break;
      start = end + 1;
    }

    ImportedTree out;
    out.model.scale = scale_;
    out.model.year = year;
    out.model.provenance = {"imported", MiningConfig{}, "", std::string(library_version())};
    for (int k = 1; k < scale_.worst_rank(); ++k) {
      auto it = blocks_.find(k);
      if (it == blocks_.end()) {
        notes_.push_back({ImportNote::Kind::MissingStage, 0, 0,
                          "no row for " + scale_.label(k) + "; stage left empty"});
        out.model.stages.push_back(ClassDnf{k, {}});
      } else {
        out.model.stages.push_back(parse_block(it->second));
      }
    }
    if (auto it = blocks_.find(scale_.worst_rank()); it != blocks_.end()) {
      out.model.residual = parse_block(it->second);
    }
    out.notes = std::move(notes_);
    return out;
  }

 private:
  struct Block {
    int rank;
    std::size_t line;
    std::vector<Token> tokens;
  };

  [[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& message) const {
    throw ParseError(std::string(source_), line, column, message);
  }

  void handle_line(std::string_view line, std::size_t line_no) {
    std::size_t i = skip_space(line, 0);
    if (i == line.size() || line[i] == '#') return;

    if (is_ident_start(line[i])) {
      std::size_t j = i;
      while (j < line.size() && is_ident_char(line[j])) ++j;
      const std::string_view word = line.substr(i, j - i);
      Direction unused;
      const bool followed_by_operator = match_operator(line, skip_space(line, j), unused) > 0;
      const bool keyword = word == "OR" || word == "AND" || iequals(word, "no");
      if (!followed_by_operator && !keyword) {
        std::string label(word);
        if (auto [suffix, length] = notch_suffix(line.substr(j)); length > 0 && scale_.rank(label + suffix)) {
          label += suffix;
          j += length;
        }
        auto rank = scale_.rank(label);
        if (!rank) fail(line_no, i + 1, "unknown rating label '" + label + "'");
        if (blocks_.count(*rank)) fail(line_no, i + 1, "repeated rating label '" + label + "'");
        current_ = &blocks_[*rank];
        current_->rank = *rank;
        current_->line = line_no;
        tokenize(line, j, line_no, current_->tokens);
        return;
      }
    }
    if (!current_) fail(line_no, i + 1, "expected a rating label");
    tokenize(line, i, line_no, current_->tokens);
  }

  void tokenize(std::string_view s, std::size_t i, std::size_t line_no, std::vector<Token>& out) const {
    while (true) {
      i = skip_space(s, i);
      if (i >= s.size()) return;
      const std::size_t column = i + 1;
      const char c = s[i];
      if (c == '(') { out.push_back({Token::Kind::Open, line_no, column}); ++i; continue; }
      if (c == ')') { out.push_back({Token::Kind::Close, line_no, column}); ++i; continue; }
      if (c == ',') { out.push_back({Token::Kind::Comma, line_no, column}); ++i; continue; }
      if (!is_ident_start(c)) fail(line_no, column, std::string("unexpected character '") + c + "'");

      std::size_t j = i;
      while (j < s.size() && is_ident_char(s[j])) ++j;
      const std::string_view word = s.substr(i, j - i);
      if (word == "OR") { out.push_back({Token::Kind::Or, line_no, column}); i = j; continue; }
      if (word == "AND") { out.push_back({Token::Kind::And, line_no, column}); i = j; continue; }
      if (iequals(word, "no")) {
        const std::size_t k = skip_space(s, j);
        if (iequals(s.substr(k, 4), "case") && (k + 4 == s.size() || !is_ident_char(s[k + 4]))) {
          out.push_back({Token::Kind::NoCase, line_no, column});
          i = k + 4;
          continue;
        }
      }

      Token literal{Token::Kind::Literal, line_no, column};
      literal.code = std::string(word);
      std::size_t k = skip_space(s, j);
      const std::size_t op_length = match_operator(s, k, literal.direction);
      if (op_length == 0) fail(line_no, k + 1, "expected '>=' or '<=' after '" + literal.code + "'");
      k = skip_space(s, k + op_length);
      std::size_t n = k;
      while (n < s.size() && is_number_char(s[n])) ++n;
      if (n == k) fail(line_no, k + 1, "expected a number");
      literal.number = std::string(s.substr(k, n - k));
      literal.number_column = k + 1;
      out.push_back(std::move(literal));
      i = n;
    }
  }

  Literal resolve(const Token& token) {
    Literal literal;
    literal.direction = token.direction;

    std::string code = token.code;
    if (!registry_.contains(code)) {
      std::string stripped = code;
      while (!stripped.empty() && std::isdigit(static_cast<unsigned char>(stripped.back()))) stripped.pop_back();
      if (mode_ == ImportMode::Lenient && stripped != code && registry_.contains(stripped)) {
        notes_.push_back({ImportNote::Kind::Repair, token.line, token.column,
                          "indicator code '" + code + "' read as '" + stripped + "'"});
        code = stripped;
      } else {
        fail(token.line, token.column, "unknown indicator code '" + code + "'");
      }
    }
    literal.indicator = code;

    auto value = text::parse_number(token.number);
    if (!value && mode_ == ImportMode::Lenient) {
      std::string repaired = token.number;
      std::replace(repaired.begin(), repaired.end(), '/', '.');
      if (auto first_dot = repaired.find('.'); first_dot != std::string::npos) {
        repaired.erase(std::remove(repaired.begin() + static_cast<std::ptrdiff_t>(first_dot) + 1,
                                   repaired.end(), '.'),
                       repaired.end());
      }
      value = text::parse_number(repaired);
      if (value) {
        notes_.push_back({ImportNote::Kind::Repair, token.line, token.number_column,
                          "number '" + token.number + "' read as " + repaired});
      }
    }
    if (!value) fail(token.line, token.number_column, "malformed number '" + token.number + "'");
    literal.threshold = *value;

    const auto* indicator = registry_.find(code);
    if (*value < indicator->plausible_min || *value > indicator->plausible_max) {
      notes_.push_back({ImportNote::Kind::Suspicious, token.line, token.column,
                        format_literal(literal) + " is outside the plausible range for " +
                            indicator->description + " (" + indicator->unit + ")"});
    }
    return literal;
  }

  Pattern finish_pattern(std::vector<Literal> literals, const Token& at) {
    if (is_redundant(literals)) {
      if (mode_ == ImportMode::Strict) {
        fail(at.line, at.column, "pattern repeats a comparison on the same indicator");
      }
      notes_.push_back({ImportNote::Kind::Suspicious, at.line, at.column,
                        "pattern repeats a comparison on the same indicator"});
    }
    for (const auto& low : literals) {
      if (low.direction != Direction::AtLeast) continue;
      for (const auto& high : literals) {
        if (high.direction == Direction::AtMost && high.indicator == low.indicator && high.threshold < low.threshold) {
          notes_.push_back({ImportNote::Kind::Suspicious, at.line, at.column,
                            "pattern can never match: " + format_literal(low) + " and " + format_literal(high)});
        }
      }
    }
    return Pattern{std::move(literals), std::nullopt};
  }

  ClassDnf parse_block(const Block& block) {
    ClassDnf dnf{block.rank, {}};
    const auto& tokens = block.tokens;
    if (tokens.empty()) fail(block.line, 1, "empty row for " + scale_.label(block.rank));
    if (tokens.front().kind == Token::Kind::NoCase) {
      if (tokens.size() != 1) fail(tokens[1].line, tokens[1].column, "unexpected text after 'No case'");
      return dnf;
    }
    if (mode_ == ImportMode::Strict) {
      parse_strict(tokens, dnf);
    } else {
      parse_lenient(tokens, dnf);
    }
    return dnf;
  }

  void parse_strict(const std::vector<Token>& tokens, ClassDnf& dnf) {
    std::size_t i = 0;
    auto expect = [&](Token::Kind kind, const char* what) -> const Token& {
      if (i >= tokens.size()) {
        const auto& last = tokens.back();
        fail(last.line, last.column, std::string("expected ") + what + " at end of row");
      }
      if (tokens[i].kind != kind) fail(tokens[i].line, tokens[i].column, std::string("expected ") + what);
      return tokens[i++];
    };
    while (true) {
      const Token& open = expect(Token::Kind::Open, "'('");
      std::vector<Literal> literals;
      literals.push_back(resolve(expect(Token::Kind::Literal, "a literal")));
      while (i < tokens.size() && (tokens[i].kind == Token::Kind::Comma || tokens[i].kind == Token::Kind::And)) {
        ++i;
        literals.push_back(resolve(expect(Token::Kind::Literal, "a literal")));
      }
      expect(Token::Kind::Close, "')'");
      dnf.patterns.push_back(finish_pattern(std::move(literals), open));
      if (i == tokens.size()) return;
      if (tokens[i].kind == Token::Kind::Comma) ++i;
      expect(Token::Kind::Or, "'OR'");
    }
  }

  void parse_lenient(const std::vector<Token>& tokens, ClassDnf& dnf) {
    std::vector<std::vector<const Token*>> chunks(1);
    for (const auto& token : tokens) {
      if (token.kind == Token::Kind::Or) {
        chunks.emplace_back();
      } else if (token.kind == Token::Kind::NoCase) {
        fail(token.line, token.column, "'No case' must stand alone");
      } else {
        chunks.back().push_back(&token);
      }
    }
    for (const auto& chunk : chunks) {
      std::vector<Literal> literals;
      int depth = 0;
      bool balanced = true;
      const Token* anchor = nullptr;
      for (const Token* token : chunk) {
        if (!anchor) anchor = token;
        switch (token->kind) {
          case Token::Kind::Open: ++depth; break;
          case Token::Kind::Close:
            if (--depth < 0) { balanced = false; depth = 0; }
            break;
          case Token::Kind::Literal:
            if (depth == 0 && !literals.empty()) balanced = false;
            literals.push_back(resolve(*token));
            break;
          default: break;
        }
      }
      if (!anchor || literals.empty()) {
        const Token& where = anchor ? *anchor : tokens.back();
        fail(where.line, where.column, "empty pattern");
      }
      if (!balanced || depth != 0 || chunk.front()->kind != Token::Kind::Open) {
        notes_.push_back({ImportNote::Kind::Repair, anchor->line, anchor->column,
                          "unbalanced parentheses; pattern taken as the literals between 'OR's"});
      }
      dnf.patterns.push_back(finish_pattern(std::move(literals), *anchor));
    }
  }

  const RatingScale& scale_;
  ImportMode mode_;
  const IndicatorRegistry& registry_;
  std::string_view source_;
  std::map<int, Block> blocks_;
  Block* current_ = nullptr;
  std::vector<ImportNote> notes_;
};

}  // namespace

ImportedTree import_decision_tree(std::string_view text, const RatingScale& scale, int year,
                                  ImportMode mode, const IndicatorRegistry& registry,
                                  std::string_view source) {
  return TreeParser(scale, mode, registry, source).parse(text, year);
}

std::string format_dnf(const ClassDnf& dnf) {
  if (dnf.empty()) return "No case";
  std::string out;
  for (std::size_t p = 0; p < dnf.patterns.size(); ++p) {
    if (p > 0) out += ", OR ";
    out += '(';
    const auto& literals = dnf.patterns[p].literals;
    for (std::size_t l = 0; l < literals.size(); ++l) {
      if (l > 0) out += ", ";
      out += format_literal(literals[l]);
    }
    out += ')';
  }
  return out;
}

std::string export_decision_tree(const CascadeModel& model) {
  std::ostringstream out;
  out << "# decision tree, year " << model.year << '\n';
  for (const auto& stage : model.stages) {
    out << model.scale.label(stage.rank) << '\t' << format_dnf(stage) << '\n';
  }
  if (model.residual) out << model.scale.worst() << '\t' << format_dnf(*model.residual) << '\n';
  return out.str();
}

}  // namespace lad
