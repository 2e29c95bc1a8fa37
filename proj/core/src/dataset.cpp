#include "lad/dataset.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

#include "lad/binarizer.hpp"
#include "lad/errors.hpp"
#include "text.hpp"

namespace lad {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Test: return "test";
    case Split::None: return "";
  }
  return "";
}

std::optional<Split> parse_split(std::string_view text) {
  const std::string lower = text::to_lower(text::trim(text));
  if (lower.empty()) return Split::None;
  if (lower == "train") return Split::Train;
  if (lower == "test") return Split::Test;
  return std::nullopt;
}

Dataset::Dataset(RatingScale scale, std::vector<CountryRecord> records, std::vector<Split> split)
    : scale_(std::move(scale)), records_(std::move(records)), split_(std::move(split)) {
  if (!split_.empty() && split_.size() != records_.size()) {
    throw std::invalid_argument("split size does not match record count");
  }
}

Split Dataset::split_of(std::size_t i) const noexcept {
  if (split_.empty() || !records_[i].is_rated()) return Split::None;
  return split_[i];
}

std::vector<std::size_t> Dataset::labeled() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].is_rated()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Dataset::training() const {
  return has_split() ? in_split(Split::Train) : labeled();
}

std::vector<std::size_t> Dataset::in_split(Split part) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].is_rated() && split_of(i) == part) out.push_back(i);
  }
  return out;
}

Dataset Dataset::with_split(std::vector<Split> split) const {
  return Dataset(scale_, records_, std::move(split));
}

namespace {

enum class Column { Country, Year, Rating, Split, Population, Indicator, Ignored };

bool is_country_header(const std::string& lower) {
  return lower == "country" || lower == "countryid" || lower == "country_id";
}

}  // namespace

LoadResult load_dataset(std::istream& in, const RatingScale& scale, const LoadOptions& options) {
  const IndicatorRegistry& registry = *options.registry;
  const std::string& source = options.source_name;
  std::vector<std::string> warnings;

  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (!text::trim(line).empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(source, 0, 0, "missing header row");

  const auto header = text::split_delimited(line, options.delimiter);
  std::vector<Column> kinds;
  std::vector<std::string> names;
  std::optional<std::size_t> country_col, year_col, rating_col, split_col, population_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name(text::trim(header[c]));
    const std::string lower = text::to_lower(name);
    names.push_back(name);
    if (is_country_header(lower) && !country_col) {
      kinds.push_back(Column::Country);
      country_col = c;
    } else if (lower == "year" && !year_col) {
      kinds.push_back(Column::Year);
      year_col = c;
    } else if (lower == "rating" && !rating_col) {
      kinds.push_back(Column::Rating);
      rating_col = c;
    } else if (lower == "split" && !split_col) {
      kinds.push_back(Column::Split);
      split_col = c;
    } else if (options.min_population && name == options.population_column && !population_col) {
      kinds.push_back(Column::Population);
      population_col = c;
    } else if (registry.contains(name)) {
      kinds.push_back(Column::Indicator);
    } else {
      kinds.push_back(Column::Ignored);
      warnings.push_back("unknown column '" + name + "' ignored");
    }
  }
  if (!country_col) throw ParseError(source, line_no, 1, "header has no country column");
  if (!year_col) throw ParseError(source, line_no, 1, "header has no year column");
  if (options.min_population && !population_col) {
    warnings.push_back("population filter requested but column '" + options.population_column +
                       "' is absent");
  }

  std::vector<CountryRecord> records;
  std::vector<Split> split;
  std::map<std::pair<std::string, int>, std::size_t> seen;

  while (next_line()) {
    const auto fields = text::split_delimited(line, options.delimiter);
    if (fields.size() != header.size()) {
      throw ParseError(source, line_no, 1,
                       "expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()));
    }
    CountryRecord record;
    Split part = Split::None;
    std::optional<double> population;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string_view cell = text::trim(fields[c]);
      switch (kinds[c]) {
        case Column::Country:
          record.country = std::string(cell);
          break;
        case Column::Year: {
          auto year = text::parse_integer(cell);
          if (!year) throw ParseError(source, line_no, c + 1, "invalid year '" + std::string(cell) + "'");
          record.year = static_cast<int>(*year);
          break;
        }
        case Column::Rating:
          if (!cell.empty()) {
            if (!scale.contains(cell)) {
              throw DataError(source + ":" + std::to_string(line_no) + ": unknown rating label '" +
                              std::string(cell) + "'");
            }
            record.rating = std::string(cell);
          }
          break;
        case Column::Split: {
          auto parsed = parse_split(cell);
          if (!parsed) throw ParseError(source, line_no, c + 1, "invalid split '" + std::string(cell) + "'");
          part = *parsed;
          break;
        }
        case Column::Population:
          if (!cell.empty()) {
            population = text::parse_number(cell);
            if (!population) throw ParseError(source, line_no, c + 1, "invalid population");
          }
          break;
        case Column::Indicator:
          if (!cell.empty()) {
            auto value = text::parse_number(cell);
            if (!value) {
              throw ParseError(source, line_no, c + 1,
                               "invalid value '" + std::string(cell) + "' for " + names[c]);
            }
            record.values.emplace(names[c], *value);
          }
          break;
        case Column::Ignored:
          break;
      }
    }
    if (record.country.empty()) throw ParseError(source, line_no, *country_col + 1, "empty country");
    if (record.year < options.min_year || record.year > options.max_year) {
      throw DataError(source + ":" + std::to_string(line_no) + ": year " +
                      std::to_string(record.year) + " outside [" + std::to_string(options.min_year) +
                      ", " + std::to_string(options.max_year) + "]");
    }
    if (options.min_population && population && *population < *options.min_population) {
      warnings.push_back("dropped " + record.key() + ": population below threshold");
      continue;
    }
    auto [it, inserted] = seen.emplace(std::make_pair(record.country, record.year), line_no);
    if (!inserted) {
      throw DataError(source + ":" + std::to_string(line_no) + ": duplicate record " + record.key() +
                      " (first seen on line " + std::to_string(it->second) + ")");
    }
    records.push_back(std::move(record));
    split.push_back(part);
  }

  if (!split_col) split.clear();
  return {Dataset(scale, std::move(records), std::move(split)), std::move(warnings)};
}

void write_dataset(std::ostream& out, const Dataset& dataset, const IndicatorRegistry& registry,
                   char delimiter) {
  std::set<std::string> used;
  for (const auto& record : dataset.records()) {
    for (const auto& [code, value] : record.values) used.insert(code);
  }
  std::vector<std::string> columns;
  for (const auto& indicator : registry.indicators()) {
    if (used.erase(indicator.code)) columns.push_back(indicator.code);
  }
  columns.insert(columns.end(), used.begin(), used.end());

  out << "country" << delimiter << "year" << delimiter << "rating";
  if (dataset.has_split()) out << delimiter << "split";
  for (const auto& code : columns) out << delimiter << text::quote_field(code, delimiter);
  out << '\n';

  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& record = dataset[i];
    out << text::quote_field(record.country, delimiter) << delimiter << record.year << delimiter
        << record.rating.value_or("");
    if (dataset.has_split()) out << delimiter << to_string(dataset.split_of(i));
    for (const auto& code : columns) {
      out << delimiter;
      if (auto v = record.value(code)) out << text::format_number(*v);
    }
    out << '\n';
  }
}

namespace {

// Encoding under a cut-point set: per cut, 0 = missing, 1 = below, 2 = at
// least, 3 = exactly on the threshold (both literals hold).
std::vector<unsigned char> encode(const CountryRecord& record, const std::vector<CutPoint>& cuts) {
  std::vector<unsigned char> code;
  code.reserve(cuts.size());
  for (const auto& cut : cuts) {
    auto v = record.value(cut.indicator);
    if (!v) code.push_back(0);
    else if (*v == cut.threshold) code.push_back(3);
    else code.push_back(*v > cut.threshold ? 2 : 1);
  }
  return code;
}

}  // namespace

std::vector<Diagnostic> validate(const Dataset& dataset, const ValidateOptions& options) {
  std::vector<Diagnostic> out;
  const auto records = dataset.records();

  std::map<std::pair<std::string, int>, std::size_t> keys;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& record = records[i];
    auto [it, inserted] = keys.emplace(std::make_pair(record.country, record.year), i);
    if (!inserted) {
      out.push_back({Diagnostic::Kind::DuplicateKey, "duplicate record " + record.key(), {it->second, i}});
    }
    if (record.rating && !dataset.scale().contains(*record.rating)) {
      out.push_back({Diagnostic::Kind::UnknownRating,
                     record.key() + ": unknown rating label '" + *record.rating + "'",
                     {i}});
    }
    if (record.year < options.min_year || record.year > options.max_year) {
      out.push_back({Diagnostic::Kind::YearOutOfRange,
                     record.key() + ": year outside configured range", {i}});
    }
  }

  // Only records with on-scale ratings take part in the contradiction check.
  std::vector<std::size_t> labeled;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].rating && dataset.scale().contains(*records[i].rating)) labeled.push_back(i);
  }
  auto report = [&](std::size_t a, std::size_t b) {
    out.push_back({Diagnostic::Kind::Contradiction,
                   records[a].key() + " (" + *records[a].rating + ") and " + records[b].key() + " (" +
                       *records[b].rating + ") are indistinguishable",
                   {a, b}});
  };
  if (options.cutpoints) {
    std::map<std::vector<unsigned char>, std::vector<std::size_t>> groups;
    for (auto i : labeled) groups[encode(records[i], *options.cutpoints)].push_back(i);
    for (const auto& [code, members] : groups) {
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          if (*records[members[x]].rating != *records[members[y]].rating) report(members[x], members[y]);
        }
      }
    }
  } else {
    for (std::size_t x = 0; x < labeled.size(); ++x) {
      for (std::size_t y = x + 1; y < labeled.size(); ++y) {
        const auto& a = records[labeled[x]];
        const auto& b = records[labeled[y]];
        if (a.values == b.values && *a.rating != *b.rating) report(labeled[x], labeled[y]);
      }
    }
  }
  return out;
}

Dataset split_dataset(const Dataset& dataset, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  const auto labeled = dataset.labeled();
  if (labeled.size() < 2) throw DataError("splitting needs at least two labeled records");

  std::map<int, std::vector<std::size_t>> by_class;
  for (auto i : labeled) {
    auto rank = dataset.scale().rank(*dataset[i].rating);
    if (!rank) throw DataError(dataset[i].key() + ": rating not on scale");
    by_class[*rank].push_back(i);
  }

  // Fisher-Yates on raw engine output keeps the split identical across
  // standard library implementations.
  std::mt19937_64 engine(seed);
  std::vector<Split> split(dataset.size(), Split::None);
  for (auto& [rank, members] : by_class) {
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[engine() % i]);
    }
    const auto n = members.size();
    auto take = static_cast<std::size_t>(std::llround(static_cast<double>(n) * train_fraction));
    take = std::clamp<std::size_t>(take, 1, n);
    for (std::size_t j = 0; j < n; ++j) split[members[j]] = j < take ? Split::Train : Split::Test;
  }
  return dataset.with_split(std::move(split));
}

}  // namespace lad
