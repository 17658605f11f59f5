#include "sentplan/extract.h"

#include <algorithm>
#include <set>

#include "sentplan/realizer.h"
#include "sentplan/text.h"

namespace sentplan {

namespace {

constexpr TemplateKind kContentKinds[] = {TemplateKind::kPred, TemplateKind::kWith,
                                          TemplateKind::kClause};

std::vector<std::string> PhraseTokens(std::string_view phrase) {
  std::vector<std::string> out;
  for (TextToken &t : Tokenize(phrase)) out.push_back(std::move(t.text));
  return out;
}

bool HasPlaceholder(std::string_view tmpl, std::string_view key) {
  return tmpl.find("{" + std::string(key) + "}") != std::string_view::npos;
}

// Values an attribute can take: the corpus values plus every value the
// lexicon gives an adjective (aggregation mode uses low/average/high).
std::vector<std::string> ValuesOf(const Lexicon &lexicon, const std::string &attribute) {
  std::vector<std::string> values = lexicon.Values(attribute);
  for (const auto &[slot, adjective] : lexicon.adjectives()) {
    if (slot.attribute == attribute &&
        std::find(values.begin(), values.end(), slot.value) == values.end()) {
      values.push_back(slot.value);
    }
  }
  return values;
}

// Small trie over lowercased tokens; node 0 is the root.
struct TokenTrie {
  struct Node {
    std::map<std::string, int, std::less<>> next;
    std::vector<int> entries;
  };
  std::vector<Node> nodes{Node{}};

  void Insert(const std::vector<std::string> &tokens, int entry) {
    int node = 0;
    for (const std::string &token : tokens) {
      auto it = nodes[static_cast<size_t>(node)].next.find(token);
      if (it == nodes[static_cast<size_t>(node)].next.end()) {
        nodes.emplace_back();
        int created = static_cast<int>(nodes.size()) - 1;
        nodes[static_cast<size_t>(node)].next.emplace(token, created);
        node = created;
      } else {
        node = it->second;
      }
    }
    nodes[static_cast<size_t>(node)].entries.push_back(entry);
  }
};

}  // namespace

void PatternDb::Add(std::string_view phrase, std::vector<Slot> slots) {
  std::vector<std::string> tokens = PhraseTokens(phrase);
  if (tokens.empty()) return;
  DomainMask domains = kAllDomains;
  for (const Slot &slot : slots) {
    const Attribute *a = lexicon_->attributes().Find(slot.attribute);
    domains &= a ? a->domains : kAllDomains;
  }
  // Skip exact duplicates.
  int node = 0;
  for (const std::string &token : tokens) {
    auto it = nodes_[static_cast<size_t>(node)].next.find(token);
    if (it == nodes_[static_cast<size_t>(node)].next.end()) {
      nodes_.emplace_back();
      int created = static_cast<int>(nodes_.size()) - 1;
      nodes_[static_cast<size_t>(node)].next.emplace(token, created);
      node = created;
    } else {
      node = it->second;
    }
  }
  for (int e : nodes_[static_cast<size_t>(node)].entries) {
    if (entries_[static_cast<size_t>(e)].slots == slots) return;
  }
  entries_.push_back({Join(tokens, " "), std::move(slots), domains});
  nodes_[static_cast<size_t>(node)].entries.push_back(
      static_cast<int>(entries_.size()) - 1);
}

PatternDb PatternDb::Build(const Lexicon &lexicon) {
  PatternDb db;
  db.lexicon_ = &lexicon;
  db.nodes_.emplace_back();
  const AttributeRegistry &registry = lexicon.attributes();

  for (const Attribute &attribute : registry.attributes()) {
    for (const std::string &value : ValuesOf(lexicon, attribute.name)) {
      Slot slot{attribute.name, value};
      std::optional<std::string> adjective = lexicon.Adjective(slot);
      for (TemplateKind kind : kContentKinds) {
        for (const std::string &tmpl : lexicon.Templates(slot, kind)) {
          if (HasPlaceholder(tmpl, "adj") && !adjective) continue;
          db.Add(RenderTemplate(tmpl, {&slot, adjective, "", "", ""}), {slot});
        }
      }
      if (adjective) {
        for (const std::string &noun : lexicon.Nouns(attribute.name)) {
          db.Add(*adjective + " " + noun, {slot});
        }
      } else if (attribute.scale == Scale::kEntity ||
                 attribute.scale == Scale::kCategorical) {
        db.Add(value, {slot});
      }
    }
  }

  // Distributive phrases over every scalar pair sharing a domain, the same
  // attribute twice included so that repeats are visible to scoring.
  std::vector<const Attribute *> scalars;
  for (const Attribute &a : registry.attributes()) {
    if (a.scale == Scale::kScalar3) scalars.push_back(&a);
  }
  for (const Attribute *a : scalars) {
    for (const Attribute *b : scalars) {
      if (!(a->domains & b->domains)) continue;
      for (const std::string &va : ValuesOf(lexicon, a->name)) {
        Slot sa{a->name, va};
        auto adj = lexicon.Adjective(sa);
        if (!adj) continue;
        for (const std::string &vb : ValuesOf(lexicon, b->name)) {
          Slot sb{b->name, vb};
          auto adj_b = lexicon.Adjective(sb);
          if (!adj_b || *adj_b != *adj) continue;
          for (const std::string &n1 : lexicon.Nouns(a->name)) {
            for (const std::string &n2 : lexicon.Nouns(b->name)) {
              db.Add(*adj + " " + n1 + " and " + n2, {sa, sb});
              for (TemplateKind kind : {TemplateKind::kPred, TemplateKind::kWith}) {
                for (const std::string &tmpl : lexicon.DistribTemplates(kind)) {
                  db.Add(RenderTemplate(tmpl, {&sa, adj, "", n1, n2}), {sa, sb});
                }
              }
            }
          }
        }
      }
    }
  }

  for (const auto &[phrase, slot] : lexicon.paraphrases()) db.Add(phrase, {slot});
  for (const auto &[attribute, placeholder] : lexicon.placeholders()) {
    db.Add(placeholder, {Slot{attribute, placeholder}});
  }
  return db;
}

std::vector<RealizedSlot> PatternDb::Extract(
    std::string_view text, DomainMask domains,
    const MeaningRepresentation *context) const {
  std::vector<TextToken> tokens = Tokenize(text);
  std::vector<RealizedSlot> out;
  if (tokens.empty()) return out;

  // Entity surface values of the MR, matched alongside the static patterns.
  TokenTrie dynamic;
  std::vector<Slot> dynamic_slots;
  if (context) {
    for (const Slot &slot : context->Slots()) {
      const Attribute *a = lexicon_->attributes().Find(slot.attribute);
      if (!a || a->scale != Scale::kEntity) continue;
      std::vector<std::string> phrase = PhraseTokens(slot.value);
      if (phrase.empty()) continue;
      dynamic_slots.push_back(slot);
      dynamic.Insert(phrase, static_cast<int>(dynamic_slots.size()) - 1);
    }
  }

  auto in_context = [&](const std::vector<Slot> &slots) {
    if (!context) return false;
    return std::all_of(slots.begin(), slots.end(), [&](const Slot &s) {
      return context->Has(s.attribute);
    });
  };
  // Best viable static entry at a node, or -1.
  auto pick = [&](const std::vector<int> &candidates) {
    int best = -1;
    for (int e : candidates) {
      const Entry &entry = entries_[static_cast<size_t>(e)];
      if (!(entry.domains & domains)) continue;
      if (best < 0) best = e;
      if (in_context(entry.slots)) {
        bool best_in = in_context(entries_[static_cast<size_t>(best)].slots);
        if (!best_in) best = e;
        // Prefer an exact value match of the MR among in-context entries.
        bool exact = std::all_of(entry.slots.begin(), entry.slots.end(),
                                 [&](const Slot &s) {
                                   const Slot *m = context->Find(s.attribute);
                                   return m && m->value == s.value;
                                 });
        if (exact) return e;
      }
    }
    return best;
  };

  size_t i = 0;
  while (i < tokens.size()) {
    size_t best_len = 0;
    std::vector<Slot> best_slots;

    int node = 0;
    for (size_t j = i; j < tokens.size(); ++j) {
      auto it = nodes_[static_cast<size_t>(node)].next.find(tokens[j].text);
      if (it == nodes_[static_cast<size_t>(node)].next.end()) break;
      node = it->second;
      int e = pick(nodes_[static_cast<size_t>(node)].entries);
      if (e >= 0) {
        best_len = j - i + 1;
        best_slots = entries_[static_cast<size_t>(e)].slots;
      }
    }
    node = 0;
    for (size_t j = i; j < tokens.size(); ++j) {
      const auto &next = dynamic.nodes[static_cast<size_t>(node)].next;
      auto it = next.find(tokens[j].text);
      if (it == next.end()) break;
      node = it->second;
      const auto &entries = dynamic.nodes[static_cast<size_t>(node)].entries;
      if (!entries.empty() && j - i + 1 >= best_len) {
        best_len = j - i + 1;
        best_slots = {dynamic_slots[static_cast<size_t>(entries.front())]};
      }
    }

    if (best_len == 0) {
      ++i;
      continue;
    }
    size_t begin = tokens[i].begin;
    size_t end = tokens[i + best_len - 1].end;
    for (Slot &slot : best_slots) {
      out.push_back({std::move(slot.attribute), std::move(slot.value), begin, end});
    }
    i += best_len;
  }
  return out;
}

std::vector<std::pair<std::string, std::vector<Slot>>> PatternDb::Dump() const {
  std::vector<std::pair<std::string, std::vector<Slot>>> out;
  for (const Entry &e : entries_) out.emplace_back(e.phrase, e.slots);
  return out;
}

std::vector<RealizedSlot> ExtractForMr(const PatternDb &db,
                                       const MeaningRepresentation &mr,
                                       std::string_view text) {
  return db.Extract(text, mr.Domains(db.lexicon().attributes()), &mr);
}

}  // namespace sentplan
