#include "lad/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lad/errors.hpp"

namespace lad {

namespace {

constexpr double kEps = 1e-9;

std::size_t required_count(double fraction, std::size_t total) {
  const double need = std::ceil(fraction * static_cast<double>(total) - kEps);
  return need <= 0.0 ? 0 : static_cast<std::size_t>(need);
}

bool homogeneous_enough(std::size_t pos, std::size_t neg, double min_homogeneity) {
  if (pos + neg == 0) return true;
  return static_cast<double>(pos) >= min_homogeneity * static_cast<double>(pos + neg) - kEps;
}

}  // namespace

double Coverage::prevalence() const noexcept {
  return total_positives == 0 ? 0.0
                              : static_cast<double>(positives) / static_cast<double>(total_positives);
}

double Coverage::homogeneity() const noexcept {
  const auto covered = positives + negatives;
  return covered == 0 ? 1.0 : static_cast<double>(positives) / static_cast<double>(covered);
}

bool pattern_matches(const Pattern& pattern, const CountryRecord& record) {
  return std::all_of(pattern.literals.begin(), pattern.literals.end(),
                     [&](const Literal& l) { return l.holds(record); });
}

bool Pattern::matches(const CountryRecord& record) const { return pattern_matches(*this, record); }

bool is_redundant(std::span<const Literal> literals) {
  for (std::size_t i = 0; i < literals.size(); ++i) {
    for (std::size_t j = i + 1; j < literals.size(); ++j) {
      if (literals[i].indicator == literals[j].indicator &&
          literals[i].direction == literals[j].direction) {
        return true;
      }
    }
  }
  return false;
}

bool ClassDnf::matches(const CountryRecord& record) const { return first_match(record).has_value(); }

std::optional<std::size_t> ClassDnf::first_match(const CountryRecord& record) const {
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (patterns[i].matches(record)) return i;
  }
  return std::nullopt;
}

std::string_view to_string(PrevalenceMode mode) {
  return mode == PrevalenceMode::PerPattern ? "per-pattern" : "per-dnf";
}

void MiningConfig::check() const {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (max_degree < 1) throw std::invalid_argument("max degree must be at least 1");
  if (!unit(min_prevalence)) throw std::invalid_argument("min prevalence must lie in [0, 1]");
  if (!unit(min_homogeneity)) throw std::invalid_argument("min homogeneity must lie in [0, 1]");
  if (!unit(dnf_coverage_target)) throw std::invalid_argument("coverage target must lie in [0, 1]");
  for (double step : relaxation_schedule) {
    if (!unit(step)) throw std::invalid_argument("relaxation steps must lie in [0, 1]");
  }
}

std::vector<Pattern> enumerate_patterns(const BinaryView& view, const MiningConfig& config) {
  const double floor = config.prevalence_mode == PrevalenceMode::PerPattern ? config.min_prevalence : 0.0;
  return enumerate_patterns(view, config, floor);
}

std::vector<Pattern> enumerate_patterns(const BinaryView& view, const MiningConfig& config,
                                        double min_prevalence) {
  config.check();
  const std::size_t total_positives = view.positive_count();
  if (total_positives == 0) throw DataError("pattern enumeration needs at least one positive record");

  const std::size_t min_positives = std::max<std::size_t>(1, required_count(min_prevalence, total_positives));
  const std::size_t literal_count = view.literal_count();
  const auto& positives = view.positives();

  // Literals on one cut share an indicator; map each to a dense indicator id
  // so compatibility checks are integer compares.
  std::vector<std::size_t> indicator_of(literal_count);
  {
    std::vector<std::string> seen;
    for (std::size_t l = 0; l < literal_count; ++l) {
      const auto& code = view.cutpoints()[l / 2].indicator;
      auto it = std::find(seen.begin(), seen.end(), code);
      indicator_of[l] = static_cast<std::size_t>(it - seen.begin());
      if (it == seen.end()) seen.push_back(code);
    }
  }
  auto compatible = [&](const std::vector<std::size_t>& term, std::size_t l) {
    return std::none_of(term.begin(), term.end(), [&](std::size_t t) {
      return indicator_of[t] == indicator_of[l] && t % 2 == l % 2;
    });
  };

  struct Term {
    std::vector<std::size_t> literals;
    boost::dynamic_bitset<> rows;
  };

  std::vector<Pattern> out;
  std::set<std::vector<std::size_t>> found;

  auto has_pattern_subset = [&](const std::vector<std::size_t>& term) {
    const std::size_t d = term.size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << d); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < d; ++i) {
        if (mask & (std::size_t{1} << i)) subset.push_back(term[i]);
      }
      if (found.count(subset)) return true;
    }
    return false;
  };

  std::vector<Term> frontier;
  for (std::size_t l = 0; l < literal_count; ++l) frontier.push_back({{l}, view.column(l)});

  for (int degree = 1; degree <= config.max_degree && !frontier.empty(); ++degree) {
    std::vector<Term> extend;
    for (auto& term : frontier) {
      const std::size_t pos = (term.rows & positives).count();
      if (pos < min_positives) continue;  // extensions only lose coverage
      if (config.prime_only && degree > 1 && has_pattern_subset(term.literals)) continue;

      const std::size_t neg = term.rows.count() - pos;
      const bool is_pattern = homogeneous_enough(pos, neg, config.min_homogeneity);
      if (is_pattern) {
        Pattern p;
        for (auto l : term.literals) p.literals.push_back(view.literal(l));
        p.coverage = Coverage{pos, neg, total_positives};
        out.push_back(std::move(p));
        found.insert(term.literals);
        if (config.prime_only) continue;
      }
      if (degree < config.max_degree) extend.push_back(std::move(term));
    }

    std::vector<Term> next;
    for (const auto& term : extend) {
      for (std::size_t l = term.literals.back() + 1; l < literal_count; ++l) {
        if (!compatible(term.literals, l)) continue;
        Term grown{term.literals, term.rows & view.column(l)};
        grown.literals.push_back(l);
        next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

boost::dynamic_bitset<> covered_rows(const Pattern& pattern, const BinaryView& view) {
  boost::dynamic_bitset<> rows(view.rows().size());
  rows.set();
  for (const auto& literal : pattern.literals) {
    auto index = view.literal_index(literal);
    if (!index) {
      throw std::invalid_argument("literal " + format_literal(literal) + " is not a column of the view");
    }
    rows &= view.column(*index);
  }
  return rows;
}

namespace {

struct Candidate {
  const Pattern* pattern;
  boost::dynamic_bitset<> positives;
  Coverage coverage;
  std::vector<std::size_t> key;  // sorted literal indices
};

struct Attempt {
  std::vector<std::size_t> chosen;
  boost::dynamic_bitset<> covered;
};

std::vector<Candidate> prepare(std::span<const Pattern> patterns, const BinaryView& view) {
  std::vector<Candidate> out;
  out.reserve(patterns.size());
  const auto total = view.positive_count();
  for (const auto& p : patterns) {
    auto rows = covered_rows(p, view);
    auto pos = rows & view.positives();
    const std::size_t np = pos.count();
    std::vector<std::size_t> key;
    for (const auto& l : p.literals) key.push_back(*view.literal_index(l));
    std::sort(key.begin(), key.end());
    out.push_back({&p, std::move(pos), Coverage{np, rows.count() - np, total}, std::move(key)});
  }
  return out;
}

bool preferred(const Candidate& a, std::size_t gain_a, const Candidate& b, std::size_t gain_b) {
  if (gain_a != gain_b) return gain_a > gain_b;
  const double ha = a.coverage.homogeneity();
  const double hb = b.coverage.homogeneity();
  if (ha != hb) return ha > hb;
  if (a.key.size() != b.key.size()) return a.key.size() < b.key.size();
  return a.key < b.key;
}

Attempt greedy_cover(const std::vector<Candidate>& candidates, const BinaryView& view, std::size_t needed) {
  Attempt attempt{{}, boost::dynamic_bitset<>(view.rows().size())};
  while (attempt.covered.count() < needed) {
    const Candidate* best = nullptr;
    std::size_t best_index = 0;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const std::size_t gain = (candidates[i].positives - attempt.covered).count();
      if (gain == 0) continue;
      if (!best || preferred(candidates[i], gain, *best, best_gain)) {
        best = &candidates[i];
        best_index = i;
        best_gain = gain;
      }
    }
    if (!best) break;
    attempt.chosen.push_back(best_index);
    attempt.covered |= best->positives;
  }
  return attempt;
}

}  // namespace

DnfSelection select_dnf(std::span<const Pattern> patterns, const BinaryView& view,
                        const MiningConfig& config, int rank) {
  config.check();
  DnfSelection result;
  result.dnf.rank = rank;
  const std::size_t total = view.positive_count();
  if (total == 0) {
    result.target_met = true;
    return result;
  }
  const bool per_dnf = config.prevalence_mode == PrevalenceMode::PerDnf;
  const std::size_t needed =
      std::max<std::size_t>(1, required_count(per_dnf ? config.min_prevalence : config.dnf_coverage_target, total));

  std::vector<Pattern> relaxed;
  std::span<const Pattern> pool = patterns;
  std::vector<Pattern> best_patterns;
  std::size_t best_covered = 0;
  boost::dynamic_bitset<> best_mask(view.rows().size());
  bool first = true;

  const std::size_t steps = per_dnf ? 0 : config.relaxation_schedule.size();
  for (std::size_t step = 0; step <= steps; ++step) {
    if (step > 0) {
      const double floor = config.relaxation_schedule[step - 1];
      relaxed = enumerate_patterns(view, config, floor);
      pool = relaxed;
      result.relaxations.push_back(floor);
    }
    const auto candidates = prepare(pool, view);
    const auto attempt = greedy_cover(candidates, view, needed);
    const std::size_t covered = attempt.covered.count();
    if (first || covered > best_covered) {
      first = false;
      best_covered = covered;
      best_mask = attempt.covered;
      best_patterns.clear();
      for (auto i : attempt.chosen) {
        Pattern p = *candidates[i].pattern;
        p.coverage = candidates[i].coverage;
        best_patterns.push_back(std::move(p));
      }
    }
    if (covered >= needed) break;
  }

  result.dnf.patterns = std::move(best_patterns);
  result.target_met = best_covered >= needed;
  const auto uncovered = view.positives() - best_mask;
  for (auto r = uncovered.find_first(); r != boost::dynamic_bitset<>::npos; r = uncovered.find_next(r)) {
    result.uncovered.push_back(r);
  }
  return result;
}

}  // namespace lad
