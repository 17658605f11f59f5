#include "sentplan/realizer.h"

#include <gtest/gtest.h>

#include "sentplan/text.h"

namespace sentplan {
namespace {

const Lexicon &Lex() { return Lexicon::Default(); }

TEST(RealizerTest, RenderTemplateFillsArticles) {
  Slot slot{"priceRange", "average"};
  TemplateFillers f;
  f.slot = &slot;
  f.adjective = "average";
  EXPECT_EQ(RenderTemplate("has {art} {adj} price range", f), "has an average price range");
  f.adjective = "high";
  EXPECT_EQ(RenderTemplate("has {art} {adj} price range", f), "has a high price range");
  Slot food{"food", "Italian"};
  TemplateFillers g;
  g.slot = &food;
  EXPECT_EQ(RenderTemplate("is {art} {val} place", g), "is an Italian place");
}

TEST(RealizerTest, SingleSentenceStartsWithNameAndEndsWithPeriod) {
  MeaningRepresentation mr = ParseMr("name[xname], eatType[pub], area[riverside]");
  Rng rng(1);
  SentencePlan plan = PlanAggregation(PlanScoping(mr, 1, rng),
                                      OpWeights::Only(AggregationOp::kConjunction), rng);
  Utterance u = Realize(plan, Lex());
  EXPECT_EQ(u.text, "xname is in riverside and it is a pub.");
  EXPECT_EQ(u.sentence_count, 1);
}

TEST(RealizerTest, LaterSentencesStartWithIt) {
  MeaningRepresentation mr = ParseMr("name[xname], eatType[pub], area[riverside]");
  Rng rng(1);
  SentencePlan plan = PlanScoping(mr, 2, rng);
  EXPECT_EQ(Realize(plan, Lex()).text, "xname is in riverside. It is a pub.");
}

TEST(RealizerTest, RecommendationHeadLeads) {
  MeaningRepresentation mr = ParseMr("name[xname], recommend[yes], decor[good]");
  Rng rng(1);
  PlanDirectives d;
  SentencePlan plan = BuildPlan(mr, d, Lex(), rng);
  for (Sentence &s : plan.sentences) {
    for (PlanItem &item : s.items) item.variant = 0;
  }
  EXPECT_EQ(Realize(plan, Lex()).text, "I would suggest xname because it has good decor.");
}

TEST(RealizerTest, SentenceCountMatchesPlanForRandomScopes) {
  const std::vector<std::string> attrs = {"eatType", "food", "priceRange", "customerRating",
                                          "area", "familyFriendly", "near"};
  Rng rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<std::string> pool = attrs;
    std::shuffle(pool.begin(), pool.end(), rng);
    size_t k = std::uniform_int_distribution<size_t>(1, pool.size())(rng);
    std::vector<Slot> slots{{"name", "xname"}};
    for (size_t i = 0; i < k; ++i) {
      const auto &values = Lex().Values(pool[i]);
      slots.push_back({pool[i], values[rng() % values.size()]});
    }
    MeaningRepresentation mr({{ActType::kInform, slots}});
    int period = std::uniform_int_distribution<int>(1, static_cast<int>(k))(rng);
    PlanDirectives d;
    d.period = period;
    d.distribute = true;
    SentencePlan plan = BuildPlan(mr, d, Lex(), rng);
    SampleVariants(plan, rng);
    std::string text = Realize(plan, Lex()).text;
    EXPECT_EQ(CountSentences(text), static_cast<int>(plan.sentences.size())) << text;
    // A distributive pair is one unit and cannot be split.
    const Slot *price = mr.Find("priceRange");
    const Slot *rating = mr.Find("customerRating");
    int units = static_cast<int>(k);
    if (price && rating && ValuesEqual(*price, *rating, Lex())) --units;
    EXPECT_EQ(static_cast<int>(plan.sentences.size()), std::min(period, units)) << text;
  }
}

TEST(RealizerTest, CountSentencesIgnoresDecimalPoints) {
  EXPECT_EQ(CountSentences(""), 0);
  EXPECT_EQ(CountSentences("No terminator"), 0);
  EXPECT_EQ(CountSentences("Rated 4.5 out of 5. Costs £20.50 or so."), 2);
  EXPECT_EQ(CountSentences("Really?! Yes..."), 2);
}

TEST(RealizerTest, DelexicalizeRoundTrip) {
  MeaningRepresentation mr =
      ParseMr("name[The Eagle], near[Eagle Bar], food[Italian], area[riverside]");
  EntityMap map = DelexicalizationMap(mr, Lex());
  ASSERT_EQ(map.size(), 2u);
  std::string text = "The Eagle is near Eagle Bar. The Eagles play nearby.";
  std::string delex = Delexicalize(text, map);
  EXPECT_EQ(delex, "xname is near xnear. The Eagles play nearby.");
  Relexicalized back = Relexicalize(delex, Invert(map));
  EXPECT_EQ(back.text, text);
  EXPECT_TRUE(back.unknown_placeholders.empty());
}

TEST(RealizerTest, RelexicalizeFlagsUnmappedPlaceholders) {
  EntityMap map{{"xname", "Zizzi"}};
  Relexicalized r = Relexicalize("xname is near xnear.", map);
  EXPECT_EQ(r.text, "Zizzi is near xnear.");
  EXPECT_EQ(r.unknown_placeholders, std::vector<std::string>{"xnear"});
}

}  // namespace
}  // namespace sentplan
