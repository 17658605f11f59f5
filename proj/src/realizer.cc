#include "sentplan/realizer.h"

#include <algorithm>
#include <cctype>

#include "sentplan/error.h"
#include "sentplan/text.h"

namespace sentplan {

namespace {

constexpr char kArticleMark = '\x01';

void ResolveArticles(std::string &text) {
  std::string out;
  out.reserve(text.size() + 8);
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != kArticleMark) {
      out += text[i];
      continue;
    }
    size_t j = i + 1;
    while (j < text.size() && text[j] == ' ') ++j;
    char next = j < text.size() ? static_cast<char>(std::tolower(
                                      static_cast<unsigned char>(text[j])))
                                : 'x';
    bool vowel = next == 'a' || next == 'e' || next == 'i' || next == 'o' ||
                 next == 'u';
    out += vowel ? "an" : "a";
  }
  text = std::move(out);
}

}  // namespace

std::string RenderTemplate(std::string_view tmpl, const TemplateFillers &f) {
  std::string out;
  size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out += tmpl[i++];
      continue;
    }
    size_t close = tmpl.find('}', i);
    if (close == std::string_view::npos) {
      throw Error(ErrorCode::kMissingTemplate,
                  "unterminated placeholder in '" + std::string(tmpl) + "'");
    }
    std::string_view key = tmpl.substr(i + 1, close - i - 1);
    if (key == "val" && f.slot) {
      out += f.slot->value;
    } else if (key == "adj") {
      if (!f.adjective) {
        throw Error(ErrorCode::kMissingAdjective,
                    f.slot ? f.slot->attribute + "=" + f.slot->value
                           : std::string("distributive pair"));
      }
      out += *f.adjective;
    } else if (key == "art") {
      out += kArticleMark;
    } else if (key == "name") {
      out += f.name;
    } else if (key == "noun1") {
      out += f.noun1;
    } else if (key == "noun2") {
      out += f.noun2;
    } else {
      throw Error(ErrorCode::kMissingTemplate,
                  "unknown placeholder {" + std::string(key) + "}");
    }
    i = close + 1;
  }
  ResolveArticles(out);
  return out;
}

namespace {

const std::string &Pick(const std::vector<std::string> &options, int variant,
                        std::string_view what) {
  if (options.empty()) {
    throw Error(ErrorCode::kMissingTemplate, std::string(what));
  }
  return options[static_cast<size_t>(variant) % options.size()];
}

// One or two plan items realized as a single phrase (two when joined by
// DISTRIB).
struct Unit {
  std::vector<const PlanItem *> items;
};

class SentenceRenderer {
 public:
  SentenceRenderer(const SentencePlan &plan, const Lexicon &lexicon)
      : plan_(plan), lexicon_(lexicon) {}

  std::string Pred(const Unit &unit) const { return Phrase(unit, TemplateKind::kPred); }
  std::string With(const Unit &unit) const { return Phrase(unit, TemplateKind::kWith); }

  std::string Clause(const Unit &unit) const {
    if (unit.items.size() == 1) {
      const PlanItem &item = *unit.items.front();
      const Slot &slot = SlotOf(item);
      const auto &clauses = lexicon_.Templates(slot, TemplateKind::kClause);
      if (!clauses.empty() && item.variant % 2 == 1) {
        return RenderTemplate(Pick(clauses, item.variant / 2, slot.attribute),
                    FillersFor(slot));
      }
    }
    return "it " + Pred(unit);
  }

  // Appends `cue` (a lexicon connective pattern) realized for `unit`.
  void Connect(std::string &text, std::string_view cue_key,
               const Unit &unit) const {
    const std::string &cue = lexicon_.Cue(cue_key);
    std::string piece;
    size_t i = 0;
    while (i < cue.size()) {
      if (cue[i] == '{') {
        size_t close = cue.find('}', i);
        std::string_view key(cue.data() + i + 1, close - i - 1);
        if (key == "pred") piece += Pred(unit);
        else if (key == "with") piece += With(unit);
        else if (key == "clause") piece += Clause(unit);
        else throw Error(ErrorCode::kMissingTemplate,
                         "unknown cue placeholder {" + std::string(key) + "}");
        i = close + 1;
      } else {
        piece += cue[i++];
      }
    }
    if (!piece.empty() && piece.front() != ',' && piece.front() != '.' &&
        !text.empty()) {
      text += ' ';
    }
    text += piece;
  }

  std::string Head(const PlanItem &item) const {
    const Slot &slot = SlotOf(item);
    TemplateFillers f = FillersFor(slot);
    f.name = plan_.mr.name();
    return RenderTemplate(Pick(lexicon_.Templates(slot, TemplateKind::kHead), item.variant,
                     "head template for " + slot.attribute),
                f);
  }

  const Slot &SlotOf(const PlanItem &item) const {
    const Slot *slot = plan_.mr.Find(item.attribute);
    if (!slot) {
      throw Error(ErrorCode::kUnknownAttribute,
                  "plan refers to " + item.attribute + " which the MR lacks");
    }
    return *slot;
  }

 private:
  TemplateFillers FillersFor(const Slot &slot) const {
    TemplateFillers f;
    f.slot = &slot;
    f.adjective = lexicon_.Adjective(slot);
    return f;
  }

  std::string Phrase(const Unit &unit, TemplateKind kind) const {
    const PlanItem &first = *unit.items.front();
    const Slot &slot = SlotOf(first);
    if (unit.items.size() == 1) {
      return RenderTemplate(Pick(lexicon_.Templates(slot, kind), first.variant,
                       std::string(TemplateKindName(kind)) + " template for " +
                           slot.attribute + "=" + slot.value),
                  FillersFor(slot));
    }
    const Slot &other = SlotOf(*unit.items[1]);
    TemplateFillers f = FillersFor(slot);
    if (!f.adjective) {
      throw Error(ErrorCode::kMissingAdjective, slot.attribute + "=" + slot.value);
    }
    const auto &nouns1 = lexicon_.Nouns(slot.attribute);
    const auto &nouns2 = lexicon_.Nouns(other.attribute);
    if (nouns1.empty() || nouns2.empty()) {
      throw Error(ErrorCode::kMissingTemplate,
                  "no noun for " + slot.attribute + " or " + other.attribute);
    }
    f.noun1 = nouns1.front();
    f.noun2 = nouns2.front();
    return RenderTemplate(Pick(lexicon_.DistribTemplates(kind), first.variant,
                     "distributive template"),
                f);
  }

  const SentencePlan &plan_;
  const Lexicon &lexicon_;
};

std::vector<Unit> UnitsOf(const Sentence &sentence) {
  std::vector<Unit> units;
  for (const PlanItem &item : sentence.items) {
    if (IsHeadAttribute(item.attribute)) continue;
    if (item.join == AggregationOp::kDistrib && !units.empty()) {
      units.back().items.push_back(&item);
    } else {
      units.push_back({{&item}});
    }
  }
  return units;
}

bool Contrasts(const SentencePlan &plan, const std::string &a,
               const std::string &b) {
  for (const DiscourseRelation &r : plan.relations) {
    if (r.kind != RelationKind::kContrast) continue;
    auto in = [](const std::vector<std::string> &v, const std::string &x) {
      return std::find(v.begin(), v.end(), x) != v.end();
    };
    if ((in(r.nucleus, a) && in(r.satellite, b)) ||
        (in(r.nucleus, b) && in(r.satellite, a))) {
      return true;
    }
  }
  return false;
}

void Capitalize(std::string &text) {
  if (!text.empty() && text[0] >= 'a' && text[0] <= 'z') {
    text[0] = static_cast<char>(text[0] - 'a' + 'A');
  }
}

}  // namespace

Utterance Realize(const SentencePlan &plan, const Lexicon &lexicon) {
  SentenceRenderer renderer(plan, lexicon);
  const bool justify = plan.Relation(RelationKind::kJustify) != nullptr;
  std::vector<std::string> sentences;
  for (size_t s = 0; s < plan.sentences.size(); ++s) {
    const Sentence &sentence = plan.sentences[s];
    const PlanItem *recommend = nullptr;
    bool has_name = false;
    for (const PlanItem &item : sentence.items) {
      if (item.attribute == "recommend") recommend = &item;
      if (item.attribute == "name") has_name = true;
    }
    std::vector<Unit> units = UnitsOf(sentence);

    std::string text;
    bool capitalize = true;
    if (recommend) {
      text = renderer.Head(*recommend);
    } else if (has_name) {
      text = plan.mr.name();
      capitalize = false;
    }
    for (size_t u = 0; u < units.size(); ++u) {
      const Unit &unit = units[u];
      if (u == 0) {
        if (recommend) {
          renderer.Connect(text, justify ? "JUSTIFY" : "CONJUNCTION", unit);
        } else if (has_name) {
          text += ' ';
          text += renderer.Pred(unit);
        } else {
          text = renderer.Clause(unit);
        }
        continue;
      }
      const std::string &prev = units[u - 1].items.back()->attribute;
      const PlanItem &first = *unit.items.front();
      if (Contrasts(plan, prev, first.attribute)) {
        renderer.Connect(text, "CONTRAST", unit);
        continue;
      }
      AggregationOp op = first.join;
      if (op == AggregationOp::kPeriod || op == AggregationOp::kDistrib) {
        op = AggregationOp::kConjunction;
      }
      renderer.Connect(text, AggregationOpName(op), unit);
    }
    if (capitalize) Capitalize(text);
    text += lexicon.Cue("PERIOD");
    sentences.push_back(std::move(text));
  }
  Utterance utterance;
  utterance.text = Join(sentences, " ");
  utterance.sentence_count = CountSentences(utterance.text);
  for (const Slot &slot : plan.mr.Slots()) {
    const std::string *placeholder = lexicon.Placeholder(slot.attribute);
    if (placeholder && slot.value != *placeholder) utterance.lexicalized = true;
  }
  return utterance;
}

void SampleVariants(SentencePlan &plan, Rng &rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  for (Sentence &s : plan.sentences) {
    for (PlanItem &item : s.items) item.variant = pick(rng);
  }
}

EntityMap DelexicalizationMap(const MeaningRepresentation &mr,
                              const Lexicon &lexicon) {
  EntityMap map;
  for (const Slot &slot : mr.Slots()) {
    const std::string *placeholder = lexicon.Placeholder(slot.attribute);
    if (placeholder && slot.value != *placeholder) map[slot.value] = *placeholder;
  }
  return map;
}

EntityMap Invert(const EntityMap &map) {
  EntityMap out;
  for (const auto &[from, to] : map) out[to] = from;
  return out;
}

std::string Delexicalize(std::string_view text, const EntityMap &entities) {
  std::vector<const std::pair<const std::string, std::string> *> keys;
  for (const auto &entry : entities) {
    if (!entry.first.empty()) keys.push_back(&entry);
  }
  std::stable_sort(keys.begin(), keys.end(), [](auto *a, auto *b) {
    return a->first.size() > b->first.size();
  });
  std::string out;
  size_t i = 0;
  while (i < text.size()) {
    bool at_boundary = i == 0 || !IsWordChar(text[i - 1]);
    bool replaced = false;
    if (at_boundary) {
      for (const auto *entry : keys) {
        const std::string &key = entry->first;
        if (text.compare(i, key.size(), key) != 0) continue;
        size_t end = i + key.size();
        if (end < text.size() && IsWordChar(text[end]) && IsWordChar(key.back())) {
          continue;
        }
        out += entry->second;
        i = end;
        replaced = true;
        break;
      }
    }
    if (!replaced) out += text[i++];
  }
  return out;
}

Relexicalized Relexicalize(std::string_view text, const EntityMap &entities) {
  Relexicalized result;
  result.text = Delexicalize(text, entities);
  size_t i = 0;
  while (i < text.size()) {
    if (!IsWordChar(text[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < text.size() && IsWordChar(text[i])) ++i;
    std::string_view word = text.substr(start, i - start);
    bool placeholder_like =
        word.size() >= 2 && word[0] == 'x' &&
        std::all_of(word.begin() + 1, word.end(),
                    [](char c) { return c >= 'a' && c <= 'z'; });
    if (placeholder_like && !entities.count(std::string(word)) &&
        std::find(result.unknown_placeholders.begin(),
                  result.unknown_placeholders.end(),
                  word) == result.unknown_placeholders.end()) {
      result.unknown_placeholders.emplace_back(word);
    }
  }
  return result;
}

int CountSentences(std::string_view text) {
  int count = 0;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    while (i < text.size() && (text[i] == '.' || text[i] == '!' || text[i] == '?')) {
      ++i;
    }
    if (i == text.size() || std::isspace(static_cast<unsigned char>(text[i]))) {
      ++count;
    }
  }
  return count;
}

}  // namespace sentplan
