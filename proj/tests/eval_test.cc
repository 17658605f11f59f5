#include "sentplan/eval.h"

#include <gtest/gtest.h>

#include "oracles.h"
#include "sentplan/corpus.h"
#include "sentplan/error.h"
#include "sentplan/recipe.h"

namespace sentplan {
namespace {

const Lexicon &Lex() { return Lexicon::Default(); }

const PatternDb &Db() {
  static const PatternDb db = PatternDb::Build(Lex());
  return db;
}

oracle::Ser Observed(const SlotMatchResult &r) {
  return {r.substitutions, r.deletions, r.insertions, r.hallucinations, r.slot_count};
}

std::string Show(const oracle::Ser &s) {
  return "S=" + std::to_string(s.s) + " D=" + std::to_string(s.d) +
         " I=" + std::to_string(s.i) + " H=" + std::to_string(s.h) +
         " N=" + std::to_string(s.n);
}

void CheckGrid(DomainMask domain, size_t max_content) {
  auto variants = oracle::SurfaceVariants(Lex(), domain, "xname");
  size_t cases = 0;
  size_t mismatches = 0;
  oracle::ForEachMutationCase(Lex(), domain, max_content, [&](const oracle::MutationCase &c) {
    ++cases;
    oracle::Ser brute = oracle::SlotErrors(c.mr, c.text, variants);
    oracle::Ser got = Observed(SlotErrorRate(c.mr, c.text, Db()));
    bool ok = brute == c.expected && got == c.expected;
    if (!ok && ++mismatches <= 10) {
      ADD_FAILURE() << c.kind << ": '" << c.text << "' for "
                    << SerializeMr(c.mr, TokenMode::kNoSupervision)
                    << "\n  expected " << Show(c.expected) << "\n  oracle   "
                    << Show(brute) << "\n  library  " << Show(got);
    }
  });
  EXPECT_GT(cases, 1000u);
  EXPECT_EQ(mismatches, 0u) << "of " << cases;
}

TEST(SerTest, MatchesBruteForceOracleOnE2eGrid) { CheckGrid(kE2E, 3); }

TEST(SerTest, MatchesBruteForceOracleOnNycGrid) { CheckGrid(kNYC, 3); }

TEST(SerTest, OneDeletionOfSeven) {
  MeaningRepresentation mr = ParseMr(
      "name[xname], eatType[pub], food[Italian], priceRange[cheap], area[riverside], "
      "familyFriendly[yes], near[xnear]");
  SlotMatchResult r = SlotErrorRate(
      mr, "xname is a pub and it serves Italian food and it has a cheap price range and "
          "it is in riverside and it is family friendly.", Db());
  EXPECT_EQ(r.deletions, 1);
  EXPECT_EQ(r.slot_count, 7);
  EXPECT_DOUBLE_EQ(r.Ser(), 1.0 / 7.0);
}

TEST(SerTest, RecommendIsASlot) {
  MeaningRepresentation mr = ParseMr("name[xname], recommend[yes], decor[good]");
  EXPECT_EQ(SlotErrorRate(mr, "I would suggest xname because it has good decor.", Db())
                .Errors(), 0);
  SlotMatchResult r = SlotErrorRate(mr, "xname has good decor.", Db());
  EXPECT_EQ(r.deletions, 1);
  EXPECT_EQ(r.slot_count, 3);
}

TEST(SerTest, UnmatchedTextIsNotAnError) {
  MeaningRepresentation mr = ParseMr("name[xname], eatType[pub]");
  SlotMatchResult r = SlotErrorRate(mr, "Lorem ipsum dolor sit amet.", Db());
  EXPECT_EQ(r.deletions, 2);
  EXPECT_EQ(r.hallucinations, 0);
}

TEST(SerTest, EmptyMrIsRejected) {
  try {
    SlotErrorRate(MeaningRepresentation(), "text", Db());
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyMr);
  }
}

TEST(PearsonTest, AgreesWithOracle) {
  std::vector<double> x, y, z;
  for (int i = 1; i <= 10; ++i) {
    x.push_back(i);
    y.push_back(-2.0 * i + 3);
    z.push_back((i * 7) % 5);
  }
  auto neg = Pearson(x, y);
  ASSERT_TRUE(neg);
  EXPECT_NEAR(neg->r, -1.0, 1e-12);
  auto mixed = Pearson(x, z);
  ASSERT_TRUE(mixed);
  EXPECT_NEAR(mixed->r, oracle::PearsonR(x, z), 1e-12);
}

TEST(PearsonTest, PValueMatchesClosedForm) {
  // n = 3, r = 0.5: t = 1/sqrt(3) on one degree of freedom, whose two-sided
  // tail is 1 - (2/pi) atan(t) = 2/3.
  auto c = Pearson({1, 2, 3}, {1, 3, 2});
  ASSERT_TRUE(c);
  EXPECT_NEAR(c->r, 0.5, 1e-12);
  EXPECT_NEAR(c->p_value, 2.0 / 3.0, 1e-9);
}

TEST(PearsonTest, UndefinedCases) {
  EXPECT_FALSE(Pearson({1, 2, 3}, {4, 4, 4}));
  EXPECT_FALSE(Pearson({1}, {2}));
}

std::string Sentences(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) text += i == 0 ? "xname is a pub." : " It is near xnear.";
  return text;
}

TEST(PeriodMetricsTest, TwoMismatchesIn398) {
  std::vector<PeriodRow> rows;
  for (int i = 0; i < 398; ++i) {
    int target = 1 + i % 4;
    int realized = i < 2 ? target + 1 : target;
    rows.push_back({target, Sentences(realized)});
  }
  PeriodMetrics m = ComputePeriodMetrics(rows);
  EXPECT_EQ(m.rows, 398u);
  EXPECT_NEAR(m.accuracy, 0.995, 0.0005);
  EXPECT_DOUBLE_EQ(m.accuracy, 396.0 / 398.0);
  ASSERT_TRUE(m.correlation);
  EXPECT_LT(m.correlation->r, 1.0);
}

TEST(PeriodMetricsTest, PerfectAccuracyImpliesUnitCorrelation) {
  std::vector<PeriodRow> rows;
  for (int i = 0; i < 50; ++i) rows.push_back({1 + i % 5, Sentences(1 + i % 5)});
  PeriodMetrics m = ComputePeriodMetrics(rows);
  EXPECT_DOUBLE_EQ(m.accuracy, 1.0);
  ASSERT_TRUE(m.correlation);
  EXPECT_NEAR(m.correlation->r, 1.0, 1e-12);
}

TEST(DistributionTest, FindsForms) {
  auto forms = FindDistributiveForms("xname has a high price and rating.", Lex());
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(forms[0].adjective, "high");
  EXPECT_TRUE(forms[0].distinct);
  auto same = FindDistributiveForms("xname has high prices and cost.", Lex());
  ASSERT_EQ(same.size(), 1u);
  EXPECT_FALSE(same[0].distinct);
}

TEST(DistributionTest, Correctness) {
  const char *text = "xname has a low customer rating and price range.";
  EXPECT_TRUE(DistributionCorrect(DistributeValue::kLow, text, Lex()));
  EXPECT_FALSE(DistributionCorrect(DistributeValue::kHigh, text, Lex()));
  EXPECT_FALSE(DistributionCorrect(DistributeValue::kNone, text, Lex()));
  const char *plain = "xname has a low customer rating and it has a low price range.";
  EXPECT_TRUE(DistributionCorrect(DistributeValue::kNone, plain, Lex()));
  EXPECT_FALSE(DistributionCorrect(DistributeValue::kLow, plain, Lex()));
}

TEST(DistributionTest, MetricsSplitOutHigh) {
  std::vector<DistribRow> rows = {
      {DistributeValue::kHigh, "xname has a high price and rating."},
      {DistributeValue::kHigh, "xname has a high price and it is rated high."},
      {DistributeValue::kLow, "xname has a low price and rating."},
      {DistributeValue::kNone, "xname is a pub."},
  };
  DistribMetrics m = ComputeDistribMetrics(rows, Lex());
  EXPECT_EQ(m.rows, 4u);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.75);
  EXPECT_EQ(m.high_rows, 2u);
  ASSERT_TRUE(m.accuracy_on_high);
  EXPECT_DOUBLE_EQ(*m.accuracy_on_high, 0.5);
}

const MeaningRepresentation &ContrastMr() {
  static const MeaningRepresentation mr =
      ParseMr("name[xname], decor[good], service[poor], qual[excellent]");
  return mr;
}

TEST(ContrastTest, JudgesCueSides) {
  const auto &cues = DefaultContrastCues();
  auto good = JudgeContrast(ContrastMr(),
                            "xname has good decor, but it has poor service.", cues, Db());
  EXPECT_TRUE(good.attempt);
  EXPECT_TRUE(good.correct);
  auto same = JudgeContrast(
      ContrastMr(), "xname has good decor, but it has excellent food. It has poor service.",
      cues, Db());
  EXPECT_TRUE(same.attempt);
  EXPECT_FALSE(same.correct);
  auto none = JudgeContrast(ContrastMr(),
                            "xname has good decor and it has poor service.", cues, Db());
  EXPECT_FALSE(none.attempt);
  EXPECT_FALSE(none.correct);
}

TEST(ContrastTest, SentenceInitialCueTakesPreviousSentence) {
  auto j = JudgeContrast(ContrastMr(),
                         "xname has good decor. However it has poor service.",
                         DefaultContrastCues(), Db());
  EXPECT_TRUE(j.attempt);
  EXPECT_TRUE(j.correct);
}

TEST(ContrastTest, SlotsOutsideTheMrDoNotCount) {
  auto j = JudgeContrast(ContrastMr(), "xname has good decor, but it is expensive.",
                         DefaultContrastCues(), Db());
  EXPECT_TRUE(j.attempt);
  EXPECT_FALSE(j.correct);
}

TEST(ContrastTest, TwentyOneOfTwentyFive) {
  std::vector<ContrastRow> rows;
  for (int i = 0; i < 21; ++i) {
    rows.push_back({ContrastMr(), "xname has good decor, but it has poor service."});
  }
  for (int i = 0; i < 4; ++i) {
    rows.push_back({ContrastMr(), "xname has good decor, but it has excellent food."});
  }
  for (int i = 0; i < 10; ++i) {
    rows.push_back({ContrastMr(), "xname has good decor and it has poor service."});
  }
  ContrastMetrics m = ComputeContrastMetrics(rows, DefaultContrastCues(), Db());
  EXPECT_EQ(m.rows, 35u);
  EXPECT_EQ(m.attempts, 25u);
  EXPECT_EQ(m.correct, 21u);
  ASSERT_TRUE(m.correct_fraction);
  EXPECT_EQ(*m.correct_fraction, 0.84);
}

TEST(ComplexityTest, RealizedLabels) {
  MeaningRepresentation mr =
      ParseMr("name[xname], eatType[pub], food[Italian], area[riverside]");
  EXPECT_EQ(RealizedComplexity(
                mr, "xname is a pub and it serves Italian food and it is in riverside.", Db()),
            ComplexityLabel::kHigh);
  EXPECT_EQ(RealizedComplexity(
                mr, "xname is a pub. It serves Italian food. It is in riverside.", Db()),
            ComplexityLabel::kLow);
  std::vector<ComplexityRow> rows = {
      {ComplexityLabel::kHigh, mr, "xname is a pub and it serves Italian food and it is in riverside."},
      {ComplexityLabel::kHigh, mr, "xname is a pub. It serves Italian food. It is in riverside."},
  };
  EXPECT_DOUBLE_EQ(ComputeComplexityAccuracy(rows, Db()), 0.5);
}

TEST(GatesTest, ParseAndCheck) {
  Gates g = ParseGates("ser=0.1, period=0.9");
  EXPECT_DOUBLE_EQ(g.max_ser, 0.1);
  EXPECT_DOUBLE_EQ(g.min_period_accuracy, 0.9);
  EXPECT_DOUBLE_EQ(g.min_distrib_accuracy, 1.0);
  EXPECT_THROW(ParseGates("bleu=0.3"), Error);
  EXPECT_THROW(ParseGates("ser=abc"), Error);

  EvalReport report;
  report.rows = 10;
  report.ser = 0.05;
  report.period_accuracy = 0.95;
  EXPECT_TRUE(CheckGates(report, g).empty());
  EXPECT_EQ(CheckGates(report, Gates{}).size(), 2u);
}

std::vector<EvalRow> SynthesizedRows() {
  std::vector<EvalRow> rows;
  GenerateOptions options;
  options.seed = 5;
  options.scale = 0.02;
  options.gate = false;
  for (const char *name : {"scoping", "aggregation", "contrast_nyc"}) {
    Corpus corpus = Generate(LoadRecipe(name), Lex(), Db(), options);
    for (const CorpusSplit &split : corpus.splits) {
      for (const DatasetRow &row : split.rows) {
        rows.push_back({row.mr, row.ref, row.meta.period, row.meta.distribute,
                        row.meta.contrast, row.meta.complexity});
      }
    }
  }
  return rows;
}

TEST(ScoringTest, ParallelMatchesSerial) {
  std::vector<EvalRow> rows = SynthesizedRows();
  ASSERT_GT(rows.size(), 2000u);
  EvalOptions options;
  auto serial = ScoreRowsSerial(rows, Db(), options);
  for (int workers : {1, 2, 4}) {
    EXPECT_TRUE(ScoreRowsParallel(rows, Db(), options, workers) == serial) << workers;
  }
}

TEST(ScoringTest, SynthesizedRowsAreClean) {
  EvalReport r = Evaluate(SynthesizedRows(), Db(), {}, 2);
  EXPECT_EQ(r.ser, 0.0);
  EXPECT_EQ(r.period_accuracy, 1.0);
  EXPECT_EQ(r.distrib_accuracy, 1.0);
  EXPECT_EQ(r.contrast_expected_accuracy, 1.0);
  EXPECT_EQ(r.complexity_accuracy, 1.0);
  EXPECT_TRUE(CheckGates(r, Gates{}).empty());
}

}  // namespace
}  // namespace sentplan
