#include "lad/binarizer.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

#include "lad/errors.hpp"
#include "lad/set_cover.hpp"
#include "text.hpp"

namespace lad {

std::vector<CutPoint> candidate_cutpoints(std::span<const LabeledRecord> records,
                                          std::string_view indicator) {
  struct Point {
    double value;
    bool positive;
  };
  std::vector<Point> points;
  for (const auto& r : records) {
    if (auto v = r.record->value(indicator)) points.push_back({*v, r.positive});
  }
  if (points.empty()) {
    throw DataError("indicator '" + std::string(indicator) + "' is absent from all records");
  }
  std::sort(points.begin(), points.end(),
            [](const Point& a, const Point& b) { return a.value < b.value; });

  // One entry per distinct value: which classes occur there.
  struct Group {
    double value;
    bool has_positive = false;
    bool has_negative = false;
  };
  std::vector<Group> groups;
  bool any_positive = false;
  bool any_negative = false;
  for (const auto& p : points) {
    if (groups.empty() || groups.back().value != p.value) groups.push_back({p.value});
    (p.positive ? groups.back().has_positive : groups.back().has_negative) = true;
    (p.positive ? any_positive : any_negative) = true;
  }
  if (!any_positive || !any_negative) return {};

  std::vector<CutPoint> cuts;
  for (std::size_t i = 0; i + 1 < groups.size(); ++i) {
    const auto& lo = groups[i];
    const auto& hi = groups[i + 1];
    const bool lo_pure = lo.has_positive != lo.has_negative;
    const bool hi_pure = hi.has_positive != hi.has_negative;
    if (lo_pure && hi_pure && lo.has_positive == hi.has_positive) continue;
    cuts.push_back({std::string(indicator), std::midpoint(lo.value, hi.value)});
  }
  return cuts;
}

namespace {

// 0 missing, 1 below, 2 above, 3 on the threshold.
int encode(const CutPoint& cut, const CountryRecord& record) {
  auto v = record.value(cut.indicator);
  if (!v) return 0;
  if (*v == cut.threshold) return 3;
  return *v > cut.threshold ? 2 : 1;
}

}  // namespace

bool distinguishes(const CutPoint& cut, const CountryRecord& a, const CountryRecord& b) {
  return encode(cut, a) != encode(cut, b);
}

std::vector<CutPoint> minimize_cutpoints(std::span<const CutPoint> candidates,
                                         std::span<const LabeledRecord> records,
                                         const MinimizeOptions& options) {
  std::vector<const CountryRecord*> positives;
  std::vector<const CountryRecord*> negatives;
  for (const auto& r : records) (r.positive ? positives : negatives).push_back(r.record);

  const std::size_t pair_count = positives.size() * negatives.size();
  if (pair_count == 0) return {};

  // Cache encodings: codes[c][record] for each side.
  auto encode_side = [&](const std::vector<const CountryRecord*>& side) {
    std::vector<std::vector<int>> codes(candidates.size(), std::vector<int>(side.size()));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      for (std::size_t i = 0; i < side.size(); ++i) codes[c][i] = encode(candidates[c], *side[i]);
    }
    return codes;
  };
  const auto pos_codes = encode_side(positives);
  const auto neg_codes = encode_side(negatives);

  std::vector<ElementSet> separates(candidates.size(), ElementSet(pair_count));
  ElementSet universe(pair_count);
  for (std::size_t p = 0; p < positives.size(); ++p) {
    for (std::size_t n = 0; n < negatives.size(); ++n) {
      const std::size_t pair = p * negatives.size() + n;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (pos_codes[c][p] != neg_codes[c][n]) {
          separates[c].set(pair);
          universe.set(pair);
        }
      }
      if (!universe.test(pair)) throw ContradictionError(positives[p]->key(), negatives[n]->key());
    }
  }

  bool exact = options.strategy == CoverStrategy::Exact;
  if (options.strategy == CoverStrategy::Automatic) {
    exact = pair_count * candidates.size() <= options.exact_cell_limit;
  }
  auto chosen = exact ? exact_set_cover(separates, universe) : greedy_set_cover(separates, universe);
  std::sort(chosen.begin(), chosen.end());

  std::vector<CutPoint> out;
  out.reserve(chosen.size());
  for (auto c : chosen) out.push_back(candidates[c]);
  return out;
}

BinaryView::BinaryView(std::vector<CutPoint> cutpoints, std::vector<BinaryRow> rows)
    : cutpoints_(std::move(cutpoints)), rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  columns_.assign(literal_count(), boost::dynamic_bitset<>(n));
  positives_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = rows_[r];
    if (row.positive) positives_.set(r);
    for (std::size_t j = 0; j < cutpoints_.size(); ++j) {
      if (row.at_least.test(j)) columns_[2 * j].set(r);
      if (row.at_most.test(j)) columns_[2 * j + 1].set(r);
    }
  }
}

Literal BinaryView::literal(std::size_t index) const {
  const auto& cut = cutpoints_.at(index / 2);
  return {cut.indicator, index % 2 == 0 ? Direction::AtLeast : Direction::AtMost, cut.threshold};
}

std::optional<std::size_t> BinaryView::literal_index(const Literal& literal) const {
  for (std::size_t j = 0; j < cutpoints_.size(); ++j) {
    if (cutpoints_[j].indicator == literal.indicator && cutpoints_[j].threshold == literal.threshold) {
      return 2 * j + (literal.direction == Direction::AtLeast ? 0 : 1);
    }
  }
  return std::nullopt;
}

BinaryView binarize(std::span<const LabeledRecord> records, std::vector<CutPoint> cutpoints) {
  std::vector<BinaryRow> rows;
  rows.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    BinaryRow row{i, records[i].positive, boost::dynamic_bitset<>(cutpoints.size()),
                  boost::dynamic_bitset<>(cutpoints.size())};
    for (std::size_t j = 0; j < cutpoints.size(); ++j) {
      if (auto v = records[i].record->value(cutpoints[j].indicator)) {
        row.at_least[j] = *v >= cutpoints[j].threshold;
        row.at_most[j] = *v <= cutpoints[j].threshold;
      }
    }
    rows.push_back(std::move(row));
  }
  return BinaryView(std::move(cutpoints), std::move(rows));
}

std::string format_cutpoints(std::span<const CutPoint> cutpoints) {
  std::vector<CutPoint> sorted(cutpoints.begin(), cutpoints.end());
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  for (const auto& cut : sorted) out << cut.indicator << ',' << text::format_number(cut.threshold) << '\n';
  return out.str();
}

std::vector<CutPoint> parse_cutpoints(std::istream& in, const IndicatorRegistry& registry,
                                      std::string_view source) {
  std::vector<CutPoint> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = text::split_delimited(body, ',');
    if (fields.size() != 2) {
      throw ParseError(std::string(source), line_no, 1, "expected 'indicator,threshold'");
    }
    const std::string code(text::trim(fields[0]));
    if (!registry.contains(code)) {
      throw ParseError(std::string(source), line_no, 1, "unknown indicator code '" + code + "'");
    }
    auto threshold = text::parse_number(fields[1]);
    if (!threshold) {
      throw ParseError(std::string(source), line_no, fields[0].size() + 2,
                       "invalid threshold '" + std::string(text::trim(fields[1])) + "'");
    }
    out.push_back({code, *threshold});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lad
