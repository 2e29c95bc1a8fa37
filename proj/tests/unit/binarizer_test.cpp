#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"
#include "lad/binarizer.hpp"
#include "lad/errors.hpp"
#include "oracle.hpp"

using namespace lad;
using lad::testing::make_record;

namespace {

struct Toy {
  std::vector<CountryRecord> records;
  std::vector<LabeledRecord> labeled;

  Toy(std::initializer_list<std::pair<double, bool>> values, const char* code = "G") {
    for (const auto& [v, pos] : values) {
      records.push_back(make_record("R" + std::to_string(records.size()), {{code, v}}));
    }
    std::size_t i = 0;
    for (const auto& [v, pos] : values) labeled.push_back({&records[i++], pos});
  }
};

std::vector<double> thresholds(const std::vector<CutPoint>& cuts) {
  std::vector<double> out;
  for (const auto& c : cuts) out.push_back(c.threshold);
  return out;
}

}  // namespace

TEST(CandidateCutpoints, GuatemalaAzerbaijanMidpoint) {
  Toy toy({{3166, false}, {7189, true}});
  const auto cuts = candidate_cutpoints(toy.labeled, "G");
  ASSERT_EQ(cuts.size(), 1u);
  EXPECT_EQ(cuts[0].indicator, "G");
  EXPECT_DOUBLE_EQ(cuts[0].threshold, 5177.5);
}

TEST(CandidateCutpoints, SingleClassGivesNone) {
  Toy toy({{1, true}, {2, true}, {3, true}});
  EXPECT_TRUE(candidate_cutpoints(toy.labeled, "G").empty());
}

TEST(CandidateCutpoints, AlternatingClasses) {
  Toy toy({{1, false}, {2, true}, {3, false}});
  EXPECT_EQ(thresholds(candidate_cutpoints(toy.labeled, "G")), (std::vector<double>{1.5, 2.5}));
}

TEST(CandidateCutpoints, SharedValueForcesCutsOnBothSides) {
  Toy toy({{1, true}, {2, true}, {2, false}, {3, false}});
  EXPECT_EQ(thresholds(candidate_cutpoints(toy.labeled, "G")), (std::vector<double>{1.5, 2.5}));
}

TEST(CandidateCutpoints, AbsentIndicatorIsError) {
  Toy toy({{1, true}, {2, false}});
  EXPECT_THROW(candidate_cutpoints(toy.labeled, "EX"), DataError);
}

TEST(CandidateCutpoints, MissingValuesSkipped) {
  Toy toy({{1, true}, {5, false}});
  toy.records.push_back(make_record("M", {}));
  toy.labeled = {{&toy.records[0], true}, {&toy.records[1], false}, {&toy.records[2], false}};
  EXPECT_EQ(thresholds(candidate_cutpoints(toy.labeled, "G")), (std::vector<double>{3.0}));
}

TEST(MinimizeCutpoints, OneCutSuffices) {
  // Positives at 2 and 3, negatives at 0 and 1: 1.5 alone separates them.
  Toy toy({{0, false}, {1, false}, {2, true}, {3, true}});
  const std::vector<CutPoint> candidates{{"G", 1.5}, {"G", 2.5}};
  for (auto strategy : {CoverStrategy::Exact, CoverStrategy::Greedy, CoverStrategy::Automatic}) {
    const auto kept = minimize_cutpoints(candidates, toy.labeled, {strategy, 2000});
    EXPECT_EQ(thresholds(kept), (std::vector<double>{1.5}));
  }
}

TEST(MinimizeCutpoints, SingleCandidateKept) {
  Toy toy({{0, false}, {2, true}});
  const std::vector<CutPoint> candidates{{"G", 1}};
  EXPECT_EQ(minimize_cutpoints(candidates, toy.labeled), candidates);
}

TEST(MinimizeCutpoints, IdenticalOppositePairIsContradiction) {
  Toy toy({{4, false}, {4, true}});
  const std::vector<CutPoint> candidates{{"G", 1}};
  try {
    minimize_cutpoints(candidates, toy.labeled);
    FAIL() << "expected ContradictionError";
  } catch (const ContradictionError& e) {
    EXPECT_EQ(e.first(), "R1/2012");
    EXPECT_EQ(e.second(), "R0/2012");
    EXPECT_EQ(e.iteration(), std::nullopt);
    EXPECT_EQ(e.at_iteration(4).iteration(), 4);
  }
}

TEST(MinimizeCutpoints, MissingVersusPresentIsDistinguishable) {
  std::vector<CountryRecord> records{make_record("A", {{"G", 5}}), make_record("B", {})};
  std::vector<LabeledRecord> labeled{{&records[0], true}, {&records[1], false}};
  const std::vector<CutPoint> candidates{{"G", 1}};
  EXPECT_EQ(minimize_cutpoints(candidates, labeled).size(), 1u);
  EXPECT_TRUE(distinguishes(candidates[0], records[0], records[1]));
}

TEST(MinimizeCutpoints, KeepsCandidateOrder) {
  std::vector<CountryRecord> records{make_record("P", {{"G", 5}, {"EX", 5}}), make_record("N1", {{"G", 0}, {"EX", 5}}),
                                     make_record("N2", {{"G", 5}, {"EX", 0}})};
  std::vector<LabeledRecord> labeled{{&records[0], true}, {&records[1], false}, {&records[2], false}};
  const std::vector<CutPoint> candidates{{"G", 2.5}, {"EX", 2.5}};
  EXPECT_EQ(minimize_cutpoints(candidates, labeled), candidates);
}

TEST(Binarize, PublishedThresholdExamples) {
  std::vector<CountryRecord> records{make_record("Azerbaijan", {{"G", 7189}}), make_record("Guatemala", {{"G", 3166}}),
                                     make_record("Edge", {{"G", 5436}}), make_record("Missing", {})};
  std::vector<LabeledRecord> labeled{
      {&records[0], true}, {&records[1], false}, {&records[2], true}, {&records[3], false}};
  const auto view = binarize(labeled, {{"G", 5436}});
  ASSERT_EQ(view.rows().size(), 4u);
  EXPECT_TRUE(view.rows()[0].at_least[0]);
  EXPECT_FALSE(view.rows()[1].at_least[0]);
  EXPECT_TRUE(view.rows()[2].at_least[0]);
  EXPECT_TRUE(view.rows()[2].at_most[0]);
  EXPECT_FALSE(view.rows()[3].at_least[0]);
  EXPECT_FALSE(view.rows()[3].at_most[0]);
  EXPECT_EQ(view.positive_count(), 2u);
  EXPECT_EQ(view.negative_count(), 2u);
}

TEST(Binarize, LiteralIndexing) {
  std::vector<CountryRecord> records{make_record("A", {{"G", 1}, {"EX", 9}})};
  std::vector<LabeledRecord> labeled{{&records[0], true}};
  const auto view = binarize(labeled, {{"G", 2}, {"EX", 3}});
  EXPECT_EQ(view.literal_count(), 4u);
  EXPECT_EQ(view.literal(0), (Literal{"G", Direction::AtLeast, 2}));
  EXPECT_EQ(view.literal(3), (Literal{"EX", Direction::AtMost, 3}));
  EXPECT_EQ(view.literal_index({"EX", Direction::AtLeast, 3}), 2u);
  EXPECT_EQ(view.literal_index({"EX", Direction::AtLeast, 4}), std::nullopt);
  EXPECT_FALSE(view.column(0)[0]);
  EXPECT_TRUE(view.column(1)[0]);
  EXPECT_TRUE(view.column(2)[0]);
}

TEST(CutpointText, FormatSortsAndParses) {
  const std::vector<CutPoint> cuts{{"G", 5436}, {"EX", 38.185}, {"G", 34424.9}};
  const auto text = format_cutpoints(cuts);
  EXPECT_EQ(text, "EX,38.185\nG,5436\nG,34424.9\n");
  std::istringstream in(text);
  const auto parsed = parse_cutpoints(in);
  EXPECT_EQ(parsed, (std::vector<CutPoint>{{"EX", 38.185}, {"G", 5436}, {"G", 34424.9}}));
}

TEST(CutpointText, ParseErrorsCarryLine) {
  std::istringstream in("G,1\nQQ,2\n");
  try {
    parse_cutpoints(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream bad("G,abc\n");
  EXPECT_THROW(parse_cutpoints(bad), ParseError);
}

TEST(Literal, EvaluateAndFormat) {
  const auto r = make_record("X", {{"G", 10}});
  EXPECT_EQ((Literal{"G", Direction::AtLeast, 10}.evaluate(r)), true);
  EXPECT_EQ((Literal{"G", Direction::AtMost, 9.5}.evaluate(r)), false);
  EXPECT_EQ((Literal{"EX", Direction::AtMost, 9.5}.evaluate(r)), std::nullopt);
  EXPECT_FALSE((Literal{"EX", Direction::AtMost, 9.5}.holds(r)));
  EXPECT_EQ(format_literal({"G", Direction::AtLeast, 52456.1}), "G>=52456.1");
  EXPECT_EQ(format_literal({"C", Direction::AtMost, -9.54}), "C<=-9.54");
}

TEST(CandidateCutpoints, AgreesWithOracleOnRandomInstances) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto f = lad::testing::random_fixture(rng, 2 + i % 11, 2, 8, 0.15);
    const auto labeled = f.labeled();
    for (const auto& code : f.indicators) {
      bool present = false;
      for (const auto& r : f.records) present |= r.values.count(code) > 0;
      if (!present) continue;
      EXPECT_EQ(thresholds(candidate_cutpoints(labeled, code)), lad::testing::oracle_cutpoints(labeled, code));
    }
  }
}
