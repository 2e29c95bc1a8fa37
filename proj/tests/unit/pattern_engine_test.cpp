#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "lad/binarizer.hpp"
#include "lad/errors.hpp"
#include "lad/pattern.hpp"
#include "oracle.hpp"

using namespace lad;
using lad::testing::make_record;

namespace {

Literal ge(const char* code, double t) { return {code, Direction::AtLeast, t}; }
Literal le(const char* code, double t) { return {code, Direction::AtMost, t}; }

struct Instance {
  std::vector<CountryRecord> records;
  std::vector<bool> positive;

  BinaryView view(std::vector<CutPoint> cuts) const {
    std::vector<LabeledRecord> labeled;
    for (std::size_t i = 0; i < records.size(); ++i) labeled.push_back({&records[i], positive[i]});
    return binarize(labeled, std::move(cuts));
  }
};

MiningConfig unpruned(int degree, double prevalence, double homogeneity = 1.0) {
  MiningConfig c;
  c.max_degree = degree;
  c.min_prevalence = prevalence;
  c.min_homogeneity = homogeneity;
  c.prime_only = false;
  return c;
}

}  // namespace

TEST(Coverage, PrevalenceAndHomogeneity) {
  EXPECT_DOUBLE_EQ((Coverage{3, 1, 4}.prevalence()), 0.75);
  EXPECT_DOUBLE_EQ((Coverage{3, 1, 4}.homogeneity()), 0.75);
  EXPECT_DOUBLE_EQ((Coverage{0, 0, 4}.homogeneity()), 1.0);
  EXPECT_DOUBLE_EQ((Coverage{0, 0, 0}.prevalence()), 0.0);
}

TEST(PatternMatches, NowhereAgainstBbbmGroupOne) {
  const Pattern group{{ge("G", 5435.98), ge("EX", 38.185), le("PPP", 6.075)}, std::nullopt};
  EXPECT_TRUE(pattern_matches(group, make_record("Nowhere", {{"G", 8000}, {"EX", 40}, {"PPP", 5}})));
  EXPECT_FALSE(pattern_matches(group, make_record("Nowhere", {{"G", 8000}, {"EX", 10}, {"PPP", 5}})));
  EXPECT_FALSE(pattern_matches(group, make_record("Nowhere", {{"G", 8000}, {"EX", 40}})));
}

TEST(IsRedundant, SameIndicatorSameDirectionOnly) {
  const std::vector<Literal> interval{ge("GS", 16.925), le("GS", 30.36)};
  const std::vector<Literal> repeated{ge("GS", 16.925), ge("GS", 20)};
  EXPECT_FALSE(is_redundant(interval));
  EXPECT_TRUE(is_redundant(repeated));
}

TEST(ClassDnf, FirstMatchIndex) {
  ClassDnf dnf{3, {{{ge("G", 10)}, std::nullopt}, {{ge("EX", 5)}, std::nullopt}}};
  EXPECT_EQ(dnf.first_match(make_record("x", {{"EX", 6}})), 1u);
  EXPECT_EQ(dnf.first_match(make_record("x", {{"G", 11}, {"EX", 6}})), 0u);
  EXPECT_FALSE(dnf.matches(make_record("x", {})));
  EXPECT_FALSE(ClassDnf{}.matches(make_record("x", {{"G", 11}})));
}

TEST(EnumeratePatterns, SingleLiteralToyInstance) {
  Instance inst{{make_record("p1", {{"G", 2}}), make_record("p2", {{"G", 3}}), make_record("n", {{"G", 0}})},
                {true, true, false}};
  const auto view = inst.view({{"G", 1}});
  const auto patterns = enumerate_patterns(view, MiningConfig{});
  ASSERT_EQ(patterns.size(), 1u);
  EXPECT_EQ(patterns[0].literals, (std::vector<Literal>{ge("G", 1)}));
  EXPECT_DOUBLE_EQ(patterns[0].coverage->prevalence(), 1.0);
  EXPECT_DOUBLE_EQ(patterns[0].coverage->homogeneity(), 1.0);

  const auto oracle = lad::testing::oracle_patterns({{&inst.records[0], true}, {&inst.records[1], true}, {&inst.records[2], false}},
                                                    {{"G", 1}}, 3, 0.7, 1.0);
  ASSERT_EQ(oracle.size(), 1u);
  EXPECT_EQ(oracle.begin()->positives, 2u);
}

TEST(EnumeratePatterns, AllPositiveMakesEveryCoveringLiteralHomogeneous) {
  Instance inst{{make_record("p1", {{"G", 2}}), make_record("p2", {{"G", 3}})}, {true, true}};
  const auto view = inst.view({{"G", 2.5}});
  const auto patterns = enumerate_patterns(view, unpruned(3, 0.0));
  ASSERT_EQ(patterns.size(), 2u);
  for (const auto& p : patterns) {
    EXPECT_EQ(p.degree(), 1u);
    EXPECT_DOUBLE_EQ(p.coverage->homogeneity(), 1.0);
  }
}

TEST(EnumeratePatterns, FullPrevalenceUnreachable) {
  // Every literal misses at least one positive.
  Instance inst{{make_record("p1", {{"G", 1}, {"EX", 9}}), make_record("p2", {{"G", 9}, {"EX", 1}}),
                 make_record("n1", {{"G", 1}, {"EX", 1}}), make_record("n2", {{"G", 5}, {"EX", 5}})},
                {true, true, false, false}};
  const auto view = inst.view({{"G", 3}, {"EX", 3}, {"G", 7}, {"EX", 7}});
  EXPECT_TRUE(enumerate_patterns(view, unpruned(3, 1.0)).empty());
}

TEST(EnumeratePatterns, NoPositivesIsError) {
  Instance inst{{make_record("n", {{"G", 0}})}, {false}};
  EXPECT_THROW(enumerate_patterns(inst.view({{"G", 1}}), MiningConfig{}), DataError);
}

TEST(EnumeratePatterns, PrimeModeDropsSupersets) {
  Instance inst{{make_record("p1", {{"G", 2}, {"EX", 5}}), make_record("p2", {{"G", 3}, {"EX", 6}}),
                 make_record("n", {{"G", 0}, {"EX", 5.5}})},
                {true, true, false}};
  const auto view = inst.view({{"G", 1}, {"EX", 5.25}});
  MiningConfig prime;
  prime.min_prevalence = 0.0;
  const auto kept = enumerate_patterns(view, prime);
  for (const auto& p : kept) {
    for (const auto& l : p.literals) {
      if (p.degree() > 1) EXPECT_NE(l, ge("G", 1)) << "superset of a degree-1 pattern kept";
    }
  }
  const auto all = enumerate_patterns(view, unpruned(3, 0.0));
  EXPECT_GT(all.size(), kept.size());
}

TEST(EnumeratePatterns, OrderedByDegreeThenLiteralIndex) {
  std::mt19937_64 rng(17);
  auto f = lad::testing::random_fixture(rng, 10, 3, 5, 0.0);
  std::vector<CutPoint> cuts;
  const auto labeled = f.labeled();
  for (const auto& code : f.indicators) {
    auto c = candidate_cutpoints(labeled, code);
    cuts.insert(cuts.end(), c.begin(), c.end());
  }
  const auto view = binarize(labeled, cuts);
  const auto patterns = enumerate_patterns(view, unpruned(3, 0.0, 0.5));
  std::vector<std::vector<std::size_t>> keys;
  for (const auto& p : patterns) {
    std::vector<std::size_t> key{p.degree()};
    for (const auto& l : p.literals) key.push_back(*view.literal_index(l));
    keys.push_back(key);
  }
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
}

TEST(MiningConfig, CheckRejectsOutOfRange) {
  MiningConfig c;
  c.max_degree = 0;
  EXPECT_THROW(c.check(), std::invalid_argument);
  c = MiningConfig{};
  c.min_prevalence = 1.5;
  EXPECT_THROW(c.check(), std::invalid_argument);
  c = MiningConfig{};
  c.relaxation_schedule = {-0.1};
  EXPECT_THROW(c.check(), std::invalid_argument);
  EXPECT_NO_THROW(MiningConfig{}.check());
}

class SelectDnf : public ::testing::Test {
 protected:
  // Positives p1..p3 and one negative. A covers {p1, p2}, B covers {p3} or
  // {p2, p3}, C covers all three.
  Instance inst{{make_record("p1", {{"G", 1}, {"C", 1}}), make_record("p2", {{"G", 1}, {"EX", 1}, {"C", 1}}),
                 make_record("p3", {{"EX", 1}, {"C", 1}}), make_record("n", {{"G", 0}, {"EX", 0}, {"C", 0}})},
                {true, true, true, false}};
  BinaryView view = inst.view({{"G", 0.5}, {"EX", 0.5}, {"C", 0.5}});
  Pattern a{{ge("G", 0.5)}, std::nullopt};
  Pattern b{{ge("EX", 0.5)}, std::nullopt};
  Pattern c{{ge("C", 0.5)}, std::nullopt};
};

TEST_F(SelectDnf, DominantPatternAlone) {
  const std::vector<Pattern> patterns{a, b, c};
  const auto s = select_dnf(patterns, view, MiningConfig{}, 2);
  ASSERT_EQ(s.dnf.patterns.size(), 1u);
  EXPECT_EQ(s.dnf.patterns[0].literals, c.literals);
  EXPECT_EQ(s.dnf.rank, 2);
  EXPECT_TRUE(s.target_met);
  EXPECT_TRUE(s.uncovered.empty());
  EXPECT_TRUE(s.relaxations.empty());
}

TEST_F(SelectDnf, TwoOverlappingPatternsInOrder) {
  const std::vector<Pattern> patterns{a, b};
  MiningConfig config;
  config.relaxation_schedule.clear();
  const auto s = select_dnf(patterns, view, config);
  ASSERT_EQ(s.dnf.patterns.size(), 2u);
  EXPECT_EQ(s.dnf.patterns[0].literals, a.literals);
  EXPECT_EQ(s.dnf.patterns[1].literals, b.literals);
  EXPECT_EQ(s.dnf.patterns[0].coverage, (Coverage{2, 0, 3}));
  EXPECT_TRUE(s.target_met);
}

TEST_F(SelectDnf, EmptyPoolWithoutRelaxationLeavesRegionUncovered) {
  MiningConfig config;
  config.relaxation_schedule.clear();
  const auto s = select_dnf({}, view, config);
  EXPECT_TRUE(s.dnf.empty());
  EXPECT_FALSE(s.target_met);
  EXPECT_EQ(s.uncovered.size(), 3u);
}

TEST_F(SelectDnf, RelaxationReenumeratesFromView) {
  const auto s = select_dnf({}, view, MiningConfig{});
  EXPECT_TRUE(s.target_met);
  ASSERT_FALSE(s.relaxations.empty());
  EXPECT_DOUBLE_EQ(s.relaxations[0], 0.40);
  EXPECT_FALSE(s.dnf.empty());
}

TEST_F(SelectDnf, PerDnfPrevalenceStopsEarly) {
  MiningConfig config;
  config.prevalence_mode = PrevalenceMode::PerDnf;
  config.min_prevalence = 0.6;
  const std::vector<Pattern> patterns{a, b};
  const auto s = select_dnf(patterns, view, config);
  ASSERT_EQ(s.dnf.patterns.size(), 1u);
  EXPECT_TRUE(s.target_met);
  EXPECT_EQ(s.uncovered.size(), 1u);
}

TEST_F(SelectDnf, CoveredRowsRejectsForeignLiteral) {
  const Pattern foreign{{ge("G", 7)}, std::nullopt};
  EXPECT_THROW(covered_rows(foreign, view), std::invalid_argument);
  EXPECT_EQ(covered_rows(a, view).count(), 2u);
}

TEST(SelectDnfTies, HigherHomogeneityThenFewerLiterals) {
  // Both candidates cover p1 and p2; the first also covers the negative.
  Instance inst{{make_record("p1", {{"G", 1}, {"EX", 1}, {"C", 1}}), make_record("p2", {{"G", 1}, {"EX", 1}, {"C", 1}}),
                 make_record("n", {{"G", 1}, {"EX", 0}, {"C", 0}})},
                {true, true, false}};
  const auto view = inst.view({{"G", 0.5}, {"EX", 0.5}, {"C", 0.5}});
  const Pattern impure{{ge("G", 0.5)}, std::nullopt};
  const Pattern pair{{ge("G", 0.5), ge("EX", 0.5)}, std::nullopt};
  const Pattern single{{ge("C", 0.5)}, std::nullopt};
  const std::vector<Pattern> pool{impure, pair, single};
  const auto s = select_dnf(pool, view, MiningConfig{});
  ASSERT_EQ(s.dnf.patterns.size(), 1u);
  EXPECT_EQ(s.dnf.patterns[0].literals, single.literals);
}
