#include "sentplan/planner.h"

#include <algorithm>
#include <numeric>

#include "sentplan/error.h"

namespace sentplan {

namespace {

constexpr std::string_view kOfferingAttributes[] = {"food", "cuisine"};

bool IsOffering(std::string_view attribute) {
  return std::find(std::begin(kOfferingAttributes), std::end(kOfferingAttributes),
                   attribute) != std::end(kOfferingAttributes);
}

struct SlotPartition {
  std::vector<std::string> heads;    // name first, then recommend
  std::vector<std::string> content;  // canonical order
};

SlotPartition PartitionSlots(const MeaningRepresentation &mr) {
  SlotPartition out;
  for (const Slot &slot : CanonicalOrder(mr).Slots()) {
    if (IsHeadAttribute(slot.attribute)) {
      if (slot.attribute == "name") {
        out.heads.insert(out.heads.begin(), slot.attribute);
      } else {
        out.heads.push_back(slot.attribute);
      }
    } else {
      out.content.push_back(slot.attribute);
    }
  }
  return out;
}

int UniformInt(Rng &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Cut points of a uniformly random composition of `n` items into `parts`
// nonempty groups: a uniformly random (parts-1)-subset of {1..n-1}.
std::vector<size_t> SampleComposition(size_t n, size_t parts, Rng &rng) {
  std::vector<size_t> positions(n > 0 ? n - 1 : 0);
  std::iota(positions.begin(), positions.end(), size_t{1});
  std::shuffle(positions.begin(), positions.end(), rng);
  positions.resize(parts - 1);
  std::sort(positions.begin(), positions.end());
  positions.push_back(n);
  return positions;
}

// Appends `attributes` to `plan` as `parts` sentences; the first group is
// appended to the plan's last sentence when `extend_first` is set.
void AppendGroups(SentencePlan &plan, const std::vector<std::string> &attributes,
                  size_t parts, bool extend_first, Rng &rng) {
  if (attributes.empty()) return;
  std::vector<size_t> ends = SampleComposition(attributes.size(), parts, rng);
  size_t begin = 0;
  for (size_t g = 0; g < ends.size(); ++g) {
    if (!(g == 0 && extend_first)) plan.sentences.emplace_back();
    Sentence &sentence = plan.sentences.back();
    for (size_t i = begin; i < ends[g]; ++i) {
      sentence.items.push_back({attributes[i], AggregationOp::kPeriod, 0});
    }
    begin = ends[g];
  }
}

// Content units of a sentence: runs of items chained by DISTRIB. Returns
// [begin, end) item index ranges, head items excluded.
std::vector<std::pair<size_t, size_t>> ContentUnits(const Sentence &sentence) {
  std::vector<std::pair<size_t, size_t>> units;
  for (size_t i = 0; i < sentence.items.size(); ++i) {
    if (IsHeadAttribute(sentence.items[i].attribute)) continue;
    if (sentence.items[i].join == AggregationOp::kDistrib && !units.empty() &&
        units.back().second == i) {
      units.back().second = i + 1;
    } else {
      units.emplace_back(i, i + 1);
    }
  }
  return units;
}

void FixFirstJoins(Sentence &sentence) {
  bool first = true;
  for (PlanItem &item : sentence.items) {
    if (IsHeadAttribute(item.attribute)) {
      item.join = AggregationOp::kPeriod;
      continue;
    }
    if (first && item.join != AggregationOp::kPeriod) {
      item.join = AggregationOp::kPeriod;
    }
    first = false;
  }
}

struct Location {
  size_t sentence = 0;
  size_t item = 0;
  bool operator<(const Location &o) const {
    return sentence != o.sentence ? sentence < o.sentence : item < o.item;
  }
};

std::optional<Location> Locate(const SentencePlan &plan,
                               std::string_view attribute) {
  for (size_t s = 0; s < plan.sentences.size(); ++s) {
    const auto &items = plan.sentences[s].items;
    for (size_t i = 0; i < items.size(); ++i) {
      if (items[i].attribute == attribute) return Location{s, i};
    }
  }
  return std::nullopt;
}

// Rating precedes price in a distributive pair.
bool DistribFirst(const std::string &a, const std::string &b) {
  bool a_rating = a == "customerRating";
  bool b_rating = b == "customerRating";
  if (a_rating != b_rating) return a_rating;
  return a < b;
}

}  // namespace

std::string_view AggregationOpName(AggregationOp op) {
  switch (op) {
    case AggregationOp::kPeriod: return "PERIOD";
    case AggregationOp::kWithCue: return "WITH_CUE";
    case AggregationOp::kConjunction: return "CONJUNCTION";
    case AggregationOp::kAllMerge: return "ALL_MERGE";
    case AggregationOp::kAlsoCue: return "ALSO_CUE";
    case AggregationOp::kDistrib: return "DISTRIB";
  }
  return "PERIOD";
}

std::string_view RelationKindName(RelationKind kind) {
  return kind == RelationKind::kJustify ? "JUSTIFY" : "CONTRAST";
}

std::string_view ComplexityLabelName(ComplexityLabel label) {
  switch (label) {
    case ComplexityLabel::kLow: return "low";
    case ComplexityLabel::kMedium: return "medium";
    case ComplexityLabel::kHigh: return "high";
  }
  return "low";
}

std::optional<ComplexityLabel> ParseComplexityLabel(std::string_view text) {
  if (text == "low") return ComplexityLabel::kLow;
  if (text == "medium") return ComplexityLabel::kMedium;
  if (text == "high") return ComplexityLabel::kHigh;
  return std::nullopt;
}

OpWeights OpWeights::Only(AggregationOp op) {
  OpWeights w;
  w.weights = {0, 0, 0, 0};
  switch (op) {
    case AggregationOp::kWithCue: w.weights[0] = 1; break;
    case AggregationOp::kConjunction: w.weights[1] = 1; break;
    case AggregationOp::kAllMerge: w.weights[2] = 1; break;
    case AggregationOp::kAlsoCue: w.weights[3] = 1; break;
    default:
      throw Error(ErrorCode::kConfigError,
                  "op weights cover WITH_CUE, CONJUNCTION, ALL_MERGE, ALSO_CUE");
  }
  return w;
}

bool IsHeadAttribute(std::string_view attribute) {
  return attribute == "name" || attribute == "recommend";
}

size_t SentencePlan::NonNameCount() const {
  size_t n = 0;
  for (const Sentence &s : sentences) {
    for (const PlanItem &item : s.items) {
      if (item.attribute != "name") ++n;
    }
  }
  return n;
}

const DiscourseRelation *SentencePlan::Relation(RelationKind kind) const {
  for (const DiscourseRelation &r : relations) {
    if (r.kind == kind) return &r;
  }
  return nullptr;
}

std::vector<std::string> SentencePlan::Attributes() const {
  std::vector<std::string> out;
  for (const Sentence &s : sentences) {
    for (const PlanItem &item : s.items) out.push_back(item.attribute);
  }
  return out;
}

SentencePlan PlanScoping(const MeaningRepresentation &mr, int period_count,
                         Rng &rng) {
  SlotPartition parts = PartitionSlots(mr);
  // Heads alone still make one sentence.
  const int max_period = std::max<int>(1, parts.content.size());
  if (period_count < 1 || period_count > max_period) {
    throw Error(ErrorCode::kPeriodOutOfRange,
                "period " + std::to_string(period_count) + " outside [1, " +
                    std::to_string(max_period) + "] for " +
                    std::to_string(mr.size()) + " slots");
  }
  SentencePlan plan;
  plan.mr = mr;
  plan.sentences.emplace_back();
  for (const std::string &head : parts.heads) {
    plan.sentences.front().items.push_back({head, AggregationOp::kPeriod, 0});
  }
  AppendGroups(plan, parts.content, static_cast<size_t>(period_count),
               /*extend_first=*/true, rng);
  return plan;
}

SentencePlan PlanAggregation(SentencePlan plan, const OpWeights &weights,
                             Rng &rng) {
  static constexpr AggregationOp kOps[] = {
      AggregationOp::kWithCue, AggregationOp::kConjunction,
      AggregationOp::kAllMerge, AggregationOp::kAlsoCue};
  std::discrete_distribution<int> pick(weights.weights.begin(),
                                       weights.weights.end());
  for (Sentence &sentence : plan.sentences) {
    bool first = true;
    for (PlanItem &item : sentence.items) {
      if (IsHeadAttribute(item.attribute)) continue;
      if (first) {
        first = false;
        if (item.join != AggregationOp::kDistrib) item.join = AggregationOp::kPeriod;
        continue;
      }
      if (item.join == AggregationOp::kDistrib) continue;
      item.join = kOps[pick(rng)];
    }
  }
  return plan;
}

SentencePlan ApplyDistributive(SentencePlan plan, const Lexicon &lexicon) {
  const size_t target_sentences = plan.sentences.size();

  // Candidate scalar3 slots in plan order.
  std::vector<Slot> scalars;
  for (const std::string &attribute : plan.Attributes()) {
    if (IsHeadAttribute(attribute)) continue;
    const Attribute *a = lexicon.attributes().Find(attribute);
    const Slot *slot = plan.mr.Find(attribute);
    if (a && slot && a->scale == Scale::kScalar3) scalars.push_back(*slot);
  }
  std::vector<bool> used(scalars.size(), false);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t i = 0; i < scalars.size(); ++i) {
    if (used[i]) continue;
    for (size_t j = i + 1; j < scalars.size(); ++j) {
      if (used[j] || !ValuesEqual(scalars[i], scalars[j], lexicon)) continue;
      used[i] = used[j] = true;
      std::string first = scalars[i].attribute;
      std::string second = scalars[j].attribute;
      if (!DistribFirst(first, second)) std::swap(first, second);
      pairs.emplace_back(first, second);
      break;
    }
  }

  for (const auto &[first, second] : pairs) {
    Location a = *Locate(plan, first);
    Location b = *Locate(plan, second);
    Location early = std::min(a, b);
    AggregationOp early_join =
        plan.sentences[early.sentence].items[early.item].join;
    int variant_first = plan.sentences[a.sentence].items[a.item].variant;
    int variant_second = plan.sentences[b.sentence].items[b.item].variant;

    // Remove the later item first so the earlier index stays valid.
    Location late = std::max(a, b);
    auto &late_items = plan.sentences[late.sentence].items;
    late_items.erase(late_items.begin() + static_cast<long>(late.item));
    auto &early_items = plan.sentences[early.sentence].items;
    early_items.erase(early_items.begin() + static_cast<long>(early.item));
    early_items.insert(early_items.begin() + static_cast<long>(early.item),
                       {PlanItem{first, early_join, variant_first},
                        PlanItem{second, AggregationOp::kDistrib, variant_second}});
  }

  // Drop emptied sentences, then restore the sentence count by splitting.
  std::erase_if(plan.sentences, [](const Sentence &s) { return s.items.empty(); });
  while (plan.sentences.size() < target_sentences) {
    size_t best = plan.sentences.size();
    size_t best_units = 1;
    for (size_t s = 0; s < plan.sentences.size(); ++s) {
      size_t n = ContentUnits(plan.sentences[s]).size();
      if (n > best_units) {
        best = s;
        best_units = n;
      }
    }
    if (best == plan.sentences.size()) break;  // nothing left to split
    auto units = ContentUnits(plan.sentences[best]);
    size_t cut = units[units.size() / 2].first;
    Sentence tail;
    auto &items = plan.sentences[best].items;
    tail.items.assign(items.begin() + static_cast<long>(cut), items.end());
    items.erase(items.begin() + static_cast<long>(cut), items.end());
    plan.sentences.insert(plan.sentences.begin() + static_cast<long>(best) + 1,
                          std::move(tail));
  }
  for (Sentence &s : plan.sentences) FixFirstJoins(s);
  return plan;
}

Polarity PolarityOrNeutral(const Slot &slot, const Lexicon &lexicon) {
  const Attribute *a = lexicon.attributes().Find(slot.attribute);
  if (a && a->scale == Scale::kEntity) return Polarity::kNeutral;
  return lexicon.PolarityOf(slot).value_or(Polarity::kNeutral);
}

std::optional<DiscourseRelation> PlanContrast(const MeaningRepresentation &mr,
                                              const Lexicon &lexicon,
                                              Rng &rng) {
  std::vector<std::string> pos;
  std::vector<std::string> neg;
  const MeaningRepresentation ordered = CanonicalOrder(mr);
  for (const DialogueAct &act : ordered.acts()) {
    if (act.act != ActType::kInform) continue;
    for (const Slot &slot : act.slots) {
      switch (PolarityOrNeutral(slot, lexicon)) {
        case Polarity::kPos: pos.push_back(slot.attribute); break;
        case Polarity::kNeg: neg.push_back(slot.attribute); break;
        case Polarity::kNeutral: break;
      }
    }
  }
  if (pos.empty() || neg.empty()) return std::nullopt;
  int pick = UniformInt(rng, 0, static_cast<int>(pos.size() * neg.size()) - 1);
  return DiscourseRelation{RelationKind::kContrast,
                           {pos[static_cast<size_t>(pick) / neg.size()]},
                           {neg[static_cast<size_t>(pick) % neg.size()]}};
}

std::optional<DiscourseRelation> PlanJustify(const MeaningRepresentation &mr,
                                             const Lexicon &lexicon) {
  const Slot *recommend = mr.Find("recommend");
  if (!recommend) return std::nullopt;
  const Polarity direction = EvalPolarity(*recommend, lexicon);
  DiscourseRelation relation{RelationKind::kJustify, {"recommend"}, {}};
  for (const Slot &slot : CanonicalOrder(mr).Slots()) {
    if (IsHeadAttribute(slot.attribute)) continue;
    Polarity p = PolarityOrNeutral(slot, lexicon);
    bool offering = direction == Polarity::kPos && IsOffering(slot.attribute);
    if (p == direction || offering) relation.satellite.push_back(slot.attribute);
  }
  if (relation.satellite.empty()) return std::nullopt;
  return relation;
}

ComplexityLabel ComplexityForCounts(size_t non_name_slots, size_t sentences) {
  // a > 2 -> high, 1.5 < a <= 2 -> medium, a <= 1.5 -> low; compared in
  // integers to keep the boundaries exact.
  if (sentences == 0) sentences = 1;
  if (non_name_slots > 2 * sentences) return ComplexityLabel::kHigh;
  if (2 * non_name_slots > 3 * sentences) return ComplexityLabel::kMedium;
  return ComplexityLabel::kLow;
}

ComplexityLabel Complexity(const SentencePlan &plan) {
  return ComplexityForCounts(plan.NonNameCount(), plan.sentences.size());
}

SentencePlan BuildPlan(const MeaningRepresentation &mr,
                       const PlanDirectives &directives,
                       const Lexicon &lexicon, Rng &rng) {
  std::optional<DiscourseRelation> justify = PlanJustify(mr, lexicon);
  std::optional<DiscourseRelation> contrast;
  if (directives.contrast) contrast = PlanContrast(mr, lexicon, rng);

  SlotPartition parts = PartitionSlots(mr);
  SentencePlan plan;
  if (!justify && !contrast) {
    int period = directives.period
                     ? *directives.period
                     : UniformInt(rng, 1, std::max<int>(1, parts.content.size()));
    plan = PlanScoping(mr, period, rng);
  } else {
    // Discourse core of the first sentence: satellites and the contrast
    // pair, with the POS endpoint immediately before the NEG endpoint.
    std::vector<std::string> core;
    if (justify) core = justify->satellite;
    if (contrast) {
      const std::string &pos = contrast->nucleus.front();
      const std::string &neg = contrast->satellite.front();
      std::erase(core, pos);
      std::erase(core, neg);
      bool recommend_no = justify && mr.Find("recommend")->value == "no";
      if (recommend_no) {
        core.insert(core.begin(), {pos, neg});
      } else {
        core.push_back(pos);
        core.push_back(neg);
      }
    }
    std::vector<std::string> rest;
    for (const std::string &a : parts.content) {
      if (std::find(core.begin(), core.end(), a) == core.end()) rest.push_back(a);
    }
    int period = directives.period
                     ? *directives.period
                     : UniformInt(rng, 1, static_cast<int>(rest.size()) + 1);
    if (period < 1 || static_cast<size_t>(period) > rest.size() + 1) {
      throw Error(ErrorCode::kPeriodOutOfRange,
                  "period " + std::to_string(period) + " with " +
                      std::to_string(rest.size()) + " free slots");
    }
    plan.mr = mr;
    plan.sentences.emplace_back();
    for (const std::string &a : parts.heads) {
      plan.sentences.front().items.push_back({a, AggregationOp::kPeriod, 0});
    }
    for (const std::string &a : core) {
      plan.sentences.front().items.push_back({a, AggregationOp::kPeriod, 0});
    }
    if (period == 1) {
      for (const std::string &a : rest) {
        plan.sentences.front().items.push_back({a, AggregationOp::kPeriod, 0});
      }
    } else {
      AppendGroups(plan, rest, static_cast<size_t>(period - 1),
                   /*extend_first=*/false, rng);
    }
    if (justify) plan.relations.push_back(*justify);
    if (contrast) plan.relations.push_back(*contrast);
  }
  if (directives.distribute) plan = ApplyDistributive(std::move(plan), lexicon);
  return PlanAggregation(std::move(plan), directives.op_weights, rng);
}

}  // namespace sentplan
