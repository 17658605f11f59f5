#ifndef SENTPLAN_PLANNER_H_
#define SENTPLAN_PLANNER_H_

#include <array>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sentplan/lexicon.h"
#include "sentplan/mr.h"

namespace sentplan {

// Per-worker randomness. Every planner and corpus operation that samples
// takes one of these by reference; identical seeds give identical plans.
using Rng = std::mt19937_64;

enum class AggregationOp {
  kPeriod,
  kWithCue,
  kConjunction,
  kAllMerge,
  kAlsoCue,
  kDistrib,
};

// Lexicon cue keys: PERIOD WITH_CUE CONJUNCTION ALL_MERGE ALSO_CUE DISTRIB.
std::string_view AggregationOpName(AggregationOp op);

enum class RelationKind { kJustify, kContrast };

std::string_view RelationKindName(RelationKind kind);

// Slots are referenced by attribute name, which is unique within an MR.
struct DiscourseRelation {
  RelationKind kind = RelationKind::kContrast;
  std::vector<std::string> nucleus;
  std::vector<std::string> satellite;

  friend bool operator==(const DiscourseRelation &,
                         const DiscourseRelation &) = default;
};

// `join` relates the item to the previous content item of its sentence. The
// first content item of a sentence, and the head items (name, recommend),
// carry kPeriod. `variant` picks among the lexicon's templates.
struct PlanItem {
  std::string attribute;
  AggregationOp join = AggregationOp::kPeriod;
  int variant = 0;

  friend bool operator==(const PlanItem &, const PlanItem &) = default;
};

struct Sentence {
  std::vector<PlanItem> items;

  friend bool operator==(const Sentence &, const Sentence &) = default;
};

struct SentencePlan {
  MeaningRepresentation mr;
  std::vector<Sentence> sentences;
  std::vector<DiscourseRelation> relations;

  // Number of planned items other than the name.
  size_t NonNameCount() const;
  const DiscourseRelation *Relation(RelationKind kind) const;
  // Every planned attribute, in plan order.
  std::vector<std::string> Attributes() const;

  friend bool operator==(const SentencePlan &, const SentencePlan &) = default;
};

// Heads are realized at the front of the first sentence instead of as
// content clauses.
bool IsHeadAttribute(std::string_view attribute);

// Weights over WITH_CUE, CONJUNCTION, ALL_MERGE, ALSO_CUE (in that order).
struct OpWeights {
  std::array<double, 4> weights{0.25, 0.25, 0.25, 0.25};

  static OpWeights Uniform() { return {}; }
  static OpWeights Only(AggregationOp op);
};

enum class ComplexityLabel { kLow, kMedium, kHigh };

std::string_view ComplexityLabelName(ComplexityLabel label);
std::optional<ComplexityLabel> ParseComplexityLabel(std::string_view text);

// Structured plan directives; each field maps onto a corpus row column.
struct PlanDirectives {
  std::optional<int> period;
  bool distribute = false;
  bool contrast = false;
  OpWeights op_weights;
};

// Splits the content slots (canonical order, heads excluded) into
// `period_count` nonempty sentences using a composition drawn uniformly
// at random; heads go to the front of the first sentence.
SentencePlan PlanScoping(const MeaningRepresentation &mr, int period_count,
                         Rng &rng);

// Samples a join op for every adjacent content pair that is not DISTRIB.
SentencePlan PlanAggregation(SentencePlan plan, const OpWeights &weights,
                             Rng &rng);

// Joins every values-equal scalar3 pair with DISTRIB, rating first. A pair
// split across sentences moves into the earlier sentence; the sentence count
// is then restored by splitting the largest remaining sentence.
SentencePlan ApplyDistributive(SentencePlan plan, const Lexicon &lexicon);

// CONTRAST over one POS and one NEG inform slot, chosen uniformly among all
// candidate pairs. Nucleus is the POS slot.
std::optional<DiscourseRelation> PlanContrast(const MeaningRepresentation &mr,
                                              const Lexicon &lexicon, Rng &rng);

// JUSTIFY with the recommend act as nucleus. recommend=yes takes POS slots
// plus the offering (food, cuisine); recommend=no takes NEG slots.
std::optional<DiscourseRelation> PlanJustify(const MeaningRepresentation &mr,
                                             const Lexicon &lexicon);

ComplexityLabel ComplexityForCounts(size_t non_name_slots, size_t sentences);
ComplexityLabel Complexity(const SentencePlan &plan);

// Full planning pipeline driven by directives: discourse relations first,
// then scoping, distribution and aggregation.
SentencePlan BuildPlan(const MeaningRepresentation &mr,
                       const PlanDirectives &directives,
                       const Lexicon &lexicon, Rng &rng);

// Polarity that treats values missing from the table as neutral.
Polarity PolarityOrNeutral(const Slot &slot, const Lexicon &lexicon);

}  // namespace sentplan

#endif  // SENTPLAN_PLANNER_H_
