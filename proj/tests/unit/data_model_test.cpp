#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "lad/dataset.hpp"
#include "lad/errors.hpp"
#include "lad/indicator.hpp"

using namespace lad;
using lad::testing::make_record;

namespace {

LoadResult load(const std::string& text, LoadOptions options = {}) {
  std::istringstream in(text);
  return load_dataset(in, RatingScale::fitch(), options);
}

}  // namespace

TEST(IndicatorRegistry, BuiltinHasTwentyUniqueCodes) {
  const auto& reg = IndicatorRegistry::builtin();
  ASSERT_EQ(reg.size(), 20u);
  std::set<std::string> codes;
  for (const auto& i : reg.indicators()) codes.insert(i.code);
  EXPECT_EQ(codes.size(), 20u);
  for (const char* code : {"C", "EX", "G", "IM", "RE", "SD", "TD", "CG", "E", "GG", "GS", "IV", "I", "PPP", "R", "U",
                           "PG", "PA", "UN", "M"}) {
    EXPECT_TRUE(reg.contains(code)) << code;
  }
  EXPECT_FALSE(reg.contains("QQ"));
  EXPECT_EQ(reg.position("C"), 0u);
}

TEST(IndicatorRegistry, CustomRegistryRejectsDuplicates) {
  EXPECT_THROW(IndicatorRegistry({{"X", "", ""}, {"X", "", ""}}), std::invalid_argument);
  EXPECT_THROW(IndicatorRegistry({{"", "", ""}}), std::invalid_argument);
  IndicatorRegistry ok({{"X", "x", "u"}, {"Y", "y", "u"}});
  EXPECT_EQ(ok.size(), 2u);
}

TEST(RatingScale, FitchOrder) {
  const auto scale = RatingScale::fitch();
  const std::vector<std::string> expected{"AAA", "AAP", "AA", "AAM", "AP",  "A",   "AM", "BBBP",
                                          "BBB", "BBBM", "BBP", "BB", "BBM", "BP", "B",  "BM"};
  ASSERT_EQ(scale.size(), 16u);
  EXPECT_TRUE(std::equal(expected.begin(), expected.end(), scale.labels().begin()));
  EXPECT_EQ(scale.rank("AAA"), 1);
  EXPECT_EQ(scale.rank("BBBM"), 10);
  EXPECT_EQ(scale.rank("BM"), 16);
  EXPECT_EQ(scale.rank("ZZZ"), std::nullopt);
  EXPECT_EQ(scale.worst(), "BM");
  EXPECT_EQ(scale.fallback_policy(), FallbackPolicy::FallbackToLast);
  EXPECT_THROW(scale.label(0), std::out_of_range);
  EXPECT_THROW(scale.label(17), std::out_of_range);
}

TEST(RatingScale, RejectsBadLabels) {
  EXPECT_THROW(RatingScale({"A"}), std::invalid_argument);
  EXPECT_THROW(RatingScale({"A", "A"}), std::invalid_argument);
  EXPECT_THROW(RatingScale({"A", ""}), std::invalid_argument);
}

TEST(RatingScale, FallbackPolicyNames) {
  EXPECT_EQ(parse_fallback_policy("fallback-to-last"), FallbackPolicy::FallbackToLast);
  EXPECT_EQ(parse_fallback_policy("unclassified"), FallbackPolicy::Unclassified);
  EXPECT_EQ(parse_fallback_policy("sideways"), std::nullopt);
  EXPECT_EQ(to_string(FallbackPolicy::Unclassified), "unclassified");
}

TEST(LoadDataset, AzerbaijanRow) {
  const auto result = load("country,year,rating,G,EX\nAzerbaijan,2012,BBBM,7189,40\n");
  ASSERT_EQ(result.dataset.size(), 1u);
  const auto& r = result.dataset[0];
  EXPECT_EQ(r.country, "Azerbaijan");
  EXPECT_EQ(r.year, 2012);
  EXPECT_EQ(r.rating, "BBBM");
  EXPECT_EQ(r.value("G"), 7189.0);
  EXPECT_EQ(r.value("EX"), 40.0);
  EXPECT_TRUE(result.warnings.empty());
}

TEST(LoadDataset, HeaderOnlyGivesEmptyDataset) {
  const auto result = load("country,year,rating,G\n");
  EXPECT_TRUE(result.dataset.empty());
}

TEST(LoadDataset, BlankCellIsMissingNotZero) {
  const auto result = load("country,year,rating,G,EX\nGuatemala,2012,BB,,31\n");
  const auto& r = result.dataset[0];
  EXPECT_EQ(r.value("G"), std::nullopt);
  EXPECT_EQ(r.value("EX"), 31.0);
}

TEST(LoadDataset, UnknownColumnsWarn) {
  const auto result = load("country,year,rating,G,colour\nX,2012,A,1,red\n");
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_NE(result.warnings[0].find("colour"), std::string::npos);
}

TEST(LoadDataset, DuplicateKeyNamesRecord) {
  try {
    load("country,year,rating,G\nChile,2013,AP,1\nChile,2013,A,2\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("Chile/2013"), std::string::npos);
  }
}

TEST(LoadDataset, UnknownRatingNamesRowAndLabel) {
  try {
    load("country,year,rating,G\nChile,2013,AP,1\nPeru,2013,ZZZ,2\n", {.source_name = "in.csv"});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("ZZZ"), std::string::npos);
    EXPECT_NE(what.find(":3"), std::string::npos);
  }
}

TEST(LoadDataset, FieldCountMismatchIsParseError) {
  try {
    load("country,year,rating,G\nChile,2013,AP\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadDataset, UnratedRowsAndSplitColumn) {
  const auto result = load("country,year,rating,split,G\nA,2012,AAA,train,1\nB,2012,,,2\nC,2012,BM,test,3\n");
  const auto& d = result.dataset;
  EXPECT_TRUE(d.has_split());
  EXPECT_FALSE(d[1].is_rated());
  EXPECT_EQ(d.split_of(0), Split::Train);
  EXPECT_EQ(d.split_of(1), Split::None);
  EXPECT_EQ(d.split_of(2), Split::Test);
  EXPECT_EQ(d.labeled(), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(d.training(), (std::vector<std::size_t>{0}));
}

TEST(LoadDataset, DelimiterQuotesAndCrLf) {
  LoadOptions options;
  options.delimiter = ';';
  const auto result = load("country;year;rating;G\r\n\"Congo, Dem Republic\";2013;BP;400.5\r\n", options);
  ASSERT_EQ(result.dataset.size(), 1u);
  EXPECT_EQ(result.dataset[0].country, "Congo, Dem Republic");
  EXPECT_EQ(result.dataset[0].value("G"), 400.5);
}

TEST(LoadDataset, PopulationFilterIsOptIn) {
  const std::string text = "country,year,rating,population,G\nIceland,2013,BBB,330000,1\nPeru,2013,BBBP,3e7,2\n";
  EXPECT_EQ(load(text).dataset.size(), 2u);
  LoadOptions options;
  options.min_population = 1e6;
  const auto filtered = load(text, options);
  ASSERT_EQ(filtered.dataset.size(), 1u);
  EXPECT_EQ(filtered.dataset[0].country, "Peru");
}

TEST(LoadDataset, YearOutsideRangeRejected) {
  EXPECT_THROW(load("country,year,rating,G\nX,1850,A,1\n"), DataError);
}

TEST(WriteDataset, RoundTrip) {
  const std::string text =
      "country,year,rating,split,G,EX\n\"Congo, Dem Republic\",2013,BP,train,400.25,\nPeru,2013,,,6000,22\n";
  const auto first = load(text).dataset;
  std::ostringstream out;
  write_dataset(out, first);
  const auto second = load(out.str()).dataset;
  EXPECT_EQ(first, second);
}

TEST(Validate, CleanDataset) {
  Dataset d(RatingScale::fitch(), {make_record("A", {{"G", 1}}, "AAA"), make_record("B", {{"G", 2}}, "BM")});
  EXPECT_TRUE(validate(d).empty());
}

TEST(Validate, IdenticalValuesOppositeRatingsContradict) {
  Dataset d(RatingScale::fitch(), {make_record("A", {{"G", 1}}, "AAA"), make_record("B", {{"G", 1}}, "BM")});
  const auto diagnostics = validate(d);
  ASSERT_EQ(diagnostics.size(), 1u);
  EXPECT_EQ(diagnostics[0].kind, Diagnostic::Kind::Contradiction);
  EXPECT_EQ(diagnostics[0].records, (std::vector<std::size_t>{0, 1}));
}

TEST(Validate, UnknownLabelAndDuplicateKey) {
  Dataset d(RatingScale::fitch(), {make_record("A", {{"G", 1}}, "ZZZ"), make_record("A", {{"G", 2}}, "BM")});
  const auto diagnostics = validate(d);
  std::set<Diagnostic::Kind> kinds;
  for (const auto& x : diagnostics) kinds.insert(x.kind);
  EXPECT_TRUE(kinds.count(Diagnostic::Kind::UnknownRating));
  EXPECT_TRUE(kinds.count(Diagnostic::Kind::DuplicateKey));
}

TEST(Validate, ContradictionJudgedOnBinarizedView) {
  Dataset d(RatingScale::fitch(), {make_record("A", {{"G", 10}}, "AAA"), make_record("B", {{"G", 20}}, "BM")});
  ValidateOptions options;
  options.cutpoints = std::vector<CutPoint>{{"G", 30}};
  EXPECT_EQ(validate(d, options).size(), 1u);
  options.cutpoints = std::vector<CutPoint>{{"G", 15}};
  EXPECT_TRUE(validate(d, options).empty());
}

TEST(SplitDataset, TwoRecordsOneClass) {
  Dataset d(RatingScale::fitch(), {make_record("A", {{"G", 1}}, "A"), make_record("B", {{"G", 2}}, "A")});
  const auto s = split_dataset(d, 0.5, 3);
  EXPECT_EQ(s.in_split(Split::Train).size(), 1u);
  EXPECT_EQ(s.in_split(Split::Test).size(), 1u);
}

TEST(SplitDataset, RejectsFractionOutsideOpenInterval) {
  Dataset d(RatingScale::fitch(), {make_record("A", {{"G", 1}}, "A"), make_record("B", {{"G", 2}}, "A")});
  EXPECT_THROW(split_dataset(d, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(split_dataset(d, 1.0, 1), std::invalid_argument);
}

TEST(SplitDataset, RealisticSizeSplitIsStratifiedAndDeterministic) {
  std::vector<CountryRecord> records;
  const auto scale = RatingScale::fitch();
  for (int i = 0; i < 116; ++i) {
    records.push_back(make_record("C" + std::to_string(i), {{"G", double(i)}}, scale.label(1 + i % 16)));
  }
  Dataset d(scale, records);
  const auto a = split_dataset(d, 0.58, 7);
  const auto b = split_dataset(d, 0.58, 7);
  EXPECT_EQ(a, b);
  const auto train = a.in_split(Split::Train).size();
  EXPECT_NEAR(static_cast<double>(train), 116 * 0.58, 16.0);
  EXPECT_EQ(train + a.in_split(Split::Test).size(), 116u);
  std::map<std::string, int> train_per_class;
  std::map<std::string, int> per_class;
  for (auto i : a.in_split(Split::Train)) ++train_per_class[*a[i].rating];
  for (const auto& r : d.records()) ++per_class[*r.rating];
  EXPECT_EQ(train_per_class.size(), 16u);
  for (const auto& [label, n] : per_class) {
    EXPECT_NEAR(train_per_class[label], n * 0.58, 1.0) << label;
  }
}
