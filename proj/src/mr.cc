#include "sentplan/mr.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "sentplan/error.h"
#include "sentplan/lexicon.h"
#include "sentplan/text.h"

namespace sentplan {

const AttributeRegistry &AttributeRegistry::Builtin() {
  static const AttributeRegistry *registry = [] {
    auto *r = new AttributeRegistry;
    r->Add({"name", kAllDomains, Scale::kEntity});
    r->Add({"eatType", kE2E, Scale::kCategorical});
    r->Add({"food", kE2E, Scale::kEntity});
    r->Add({"priceRange", kE2E, Scale::kScalar3});
    r->Add({"customerRating", kE2E, Scale::kScalar3});
    r->Add({"area", kE2E, Scale::kEntity});
    r->Add({"familyFriendly", kE2E, Scale::kBoolean});
    r->Add({"near", kE2E, Scale::kEntity});
    r->Add({"recommend", kNYC, Scale::kBoolean});
    r->Add({"cuisine", kNYC, Scale::kEntity});
    r->Add({"decor", kNYC, Scale::kCategorical});
    r->Add({"qual", kNYC, Scale::kCategorical});
    r->Add({"location", kNYC, Scale::kEntity});
    r->Add({"price", kNYC, Scale::kScalar3});
    r->Add({"service", kNYC, Scale::kCategorical});
    return r;
  }();
  return *registry;
}

const Attribute *AttributeRegistry::Find(std::string_view name) const {
  for (const Attribute &a : attributes_) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

void AttributeRegistry::Add(Attribute attribute) {
  for (Attribute &a : attributes_) {
    if (a.name == attribute.name) {
      a = std::move(attribute);
      return;
    }
  }
  attributes_.push_back(std::move(attribute));
}

std::vector<std::string> AttributeRegistry::Inventory(DomainMask domains) const {
  std::vector<std::string> names;
  for (const Attribute &a : attributes_) {
    if (a.domains & domains) names.push_back(a.name);
  }
  return names;
}

std::string_view ActTag(ActType act) {
  return act == ActType::kInform ? "inform" : "recommend";
}

std::string_view DistributeValueName(DistributeValue value) {
  switch (value) {
    case DistributeValue::kNone: return "none";
    case DistributeValue::kLow: return "low";
    case DistributeValue::kAverage: return "average";
    case DistributeValue::kHigh: return "high";
  }
  return "none";
}

std::optional<DistributeValue> ParseDistributeValue(std::string_view text) {
  if (text == "none") return DistributeValue::kNone;
  if (text == "low") return DistributeValue::kLow;
  if (text == "average") return DistributeValue::kAverage;
  if (text == "high") return DistributeValue::kHigh;
  return std::nullopt;
}

SupervisionToken SupervisionToken::Period(int count) {
  return {SupervisionKind::kPeriod, count, DistributeValue::kNone};
}

SupervisionToken SupervisionToken::DistributeBinary(bool on) {
  return {SupervisionKind::kDistributeBinary, on ? 1 : 0, DistributeValue::kNone};
}

SupervisionToken SupervisionToken::DistributeSemantic(DistributeValue value) {
  return {SupervisionKind::kDistributeSemantic, 0, value};
}

SupervisionToken SupervisionToken::ContrastBinary(bool on) {
  return {SupervisionKind::kContrastBinary, on ? 1 : 0, DistributeValue::kNone};
}

std::string SupervisionToken::ToString() const {
  switch (kind) {
    case SupervisionKind::kPeriod:
      return "period[" + std::to_string(number) + "]";
    case SupervisionKind::kDistributeBinary:
      return "distribute[" + std::to_string(number) + "]";
    case SupervisionKind::kDistributeSemantic:
      return "distribute[" + std::string(DistributeValueName(distribute)) + "]";
    case SupervisionKind::kContrastBinary:
      return "contrast[" + std::to_string(number) + "]";
  }
  return {};
}

std::string_view TokenModeName(TokenMode mode) {
  switch (mode) {
    case TokenMode::kNoSupervision: return "no_supervision";
    case TokenMode::kPeriod: return "period";
    case TokenMode::kDistributeBinary: return "distribute_binary";
    case TokenMode::kDistributeSemantic: return "distribute_semantic";
    case TokenMode::kContrastBinary: return "contrast_binary";
  }
  return "no_supervision";
}

std::optional<TokenMode> ParseTokenMode(std::string_view text) {
  for (TokenMode m : {TokenMode::kNoSupervision, TokenMode::kPeriod,
                      TokenMode::kDistributeBinary,
                      TokenMode::kDistributeSemantic,
                      TokenMode::kContrastBinary}) {
    if (TokenModeName(m) == text) return m;
  }
  return std::nullopt;
}

std::string_view PolarityName(Polarity polarity) {
  switch (polarity) {
    case Polarity::kPos: return "POS";
    case Polarity::kNeg: return "NEG";
    case Polarity::kNeutral: return "NEUTRAL";
  }
  return "NEUTRAL";
}

MeaningRepresentation::MeaningRepresentation(
    std::vector<DialogueAct> acts, std::vector<SupervisionToken> supervision)
    : acts_(std::move(acts)), supervision_(std::move(supervision)) {
  std::set<std::string> seen;
  int names = 0;
  for (const DialogueAct &act : acts_) {
    if (act.slots.empty()) {
      throw Error(ErrorCode::kEmptyInput,
                  std::string(ActTag(act.act)) + " act without slots");
    }
    for (const Slot &slot : act.slots) {
      if (slot.value.empty()) {
        throw Error(ErrorCode::kMalformedToken,
                    "empty value for " + slot.attribute);
      }
      if (!seen.insert(slot.attribute).second) {
        throw Error(ErrorCode::kDuplicateAttribute, slot.attribute);
      }
      if (slot.attribute == "name") ++names;
      if (act.act == ActType::kRecommend && slot.value != "yes" &&
          slot.value != "no") {
        throw Error(ErrorCode::kUnknownValue,
                    "recommend expects yes/no, got " + slot.value);
      }
    }
  }
  if (names != 1) {
    throw Error(ErrorCode::kMissingName, "an MR needs exactly one name slot");
  }
  std::set<SupervisionKind> kinds;
  for (const SupervisionToken &t : supervision_) {
    if (!kinds.insert(t.kind).second) {
      throw Error(ErrorCode::kDuplicateAttribute,
                  "repeated supervision token " + t.ToString());
    }
    if (t.kind == SupervisionKind::kPeriod && t.number < 1) {
      throw Error(ErrorCode::kMalformedToken, t.ToString());
    }
  }
}

std::vector<Slot> MeaningRepresentation::Slots() const {
  std::vector<Slot> slots;
  for (const DialogueAct &act : acts_) {
    slots.insert(slots.end(), act.slots.begin(), act.slots.end());
  }
  return slots;
}

size_t MeaningRepresentation::size() const {
  size_t n = 0;
  for (const DialogueAct &act : acts_) n += act.slots.size();
  return n;
}

const Slot *MeaningRepresentation::Find(std::string_view attribute) const {
  for (const DialogueAct &act : acts_) {
    for (const Slot &slot : act.slots) {
      if (slot.attribute == attribute) return &slot;
    }
  }
  return nullptr;
}

const SupervisionToken *MeaningRepresentation::Token(SupervisionKind kind) const {
  for (const SupervisionToken &t : supervision_) {
    if (t.kind == kind) return &t;
  }
  return nullptr;
}

const std::string &MeaningRepresentation::name() const {
  static const std::string kEmpty;
  const Slot *slot = Find("name");
  return slot ? slot->value : kEmpty;
}

DomainMask MeaningRepresentation::Domains(
    const AttributeRegistry &registry) const {
  DomainMask mask = 0;
  for (const DialogueAct &act : acts_) {
    for (const Slot &slot : act.slots) {
      if (slot.attribute == "name") continue;
      if (const Attribute *a = registry.Find(slot.attribute)) mask |= a->domains;
    }
  }
  return mask ? mask : kAllDomains;
}

MeaningRepresentation MeaningRepresentation::WithToken(
    SupervisionToken token) const {
  std::vector<SupervisionToken> tokens;
  for (const SupervisionToken &t : supervision_) {
    if (t.kind != token.kind) tokens.push_back(t);
  }
  tokens.push_back(token);
  return MeaningRepresentation(acts_, std::move(tokens));
}

MeaningRepresentation MeaningRepresentation::WithoutSupervision() const {
  return MeaningRepresentation(acts_, {});
}

namespace {

// Splits at commas outside brackets.
std::vector<std::string_view> SplitTokens(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '[') {
      ++depth;
    } else if (c == ']') {
      if (depth > 0) --depth;
    } else if (c == ',' && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

std::optional<int> ParseInt(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

SupervisionToken ParseSupervision(std::string_view key, std::string_view value,
                                  std::string_view token) {
  auto bad = [&] {
    return Error(ErrorCode::kMalformedToken, std::string(token));
  };
  if (key == "period") {
    auto n = ParseInt(value);
    if (!n || *n < 1) throw bad();
    return SupervisionToken::Period(*n);
  }
  if (key == "distribute") {
    if (value == "0" || value == "1") {
      return SupervisionToken::DistributeBinary(value == "1");
    }
    auto v = ParseDistributeValue(value);
    if (!v) throw bad();
    return SupervisionToken::DistributeSemantic(*v);
  }
  if (value != "0" && value != "1") throw bad();
  return SupervisionToken::ContrastBinary(value == "1");
}

bool IsSupervisionKey(std::string_view key) {
  return key == "period" || key == "distribute" || key == "contrast";
}

}  // namespace

MeaningRepresentation ParseMr(std::string_view text,
                              const AttributeRegistry &registry) {
  if (Trim(text).empty()) throw Error(ErrorCode::kEmptyInput, "empty MR");
  DialogueAct inform{ActType::kInform, {}};
  DialogueAct recommend{ActType::kRecommend, {}};
  std::vector<SupervisionToken> tokens;
  std::set<std::string, std::less<>> seen;
  for (std::string_view raw : SplitTokens(text)) {
    std::string_view token = Trim(raw);
    size_t open = token.find('[');
    if (token.empty() || open == std::string_view::npos || open == 0 ||
        token.back() != ']') {
      throw Error(ErrorCode::kMalformedToken, "'" + std::string(token) + "'");
    }
    std::string_view key = Trim(token.substr(0, open));
    std::string_view value =
        Trim(token.substr(open + 1, token.size() - open - 2));
    if (value.empty()) {
      throw Error(ErrorCode::kMalformedToken, "'" + std::string(token) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw Error(ErrorCode::kDuplicateAttribute, std::string(key));
    }
    if (IsSupervisionKey(key)) {
      tokens.push_back(ParseSupervision(key, value, token));
      continue;
    }
    if (!registry.Find(key)) {
      throw Error(ErrorCode::kUnknownAttribute, std::string(key));
    }
    Slot slot{std::string(key), std::string(value)};
    if (key == "recommend") {
      recommend.slots.push_back(std::move(slot));
    } else {
      inform.slots.push_back(std::move(slot));
    }
  }
  std::vector<DialogueAct> acts;
  if (!inform.slots.empty()) acts.push_back(std::move(inform));
  if (!recommend.slots.empty()) acts.push_back(std::move(recommend));
  return MeaningRepresentation(std::move(acts), std::move(tokens));
}

MeaningRepresentation CanonicalOrder(const MeaningRepresentation &mr) {
  std::vector<DialogueAct> acts = mr.acts();
  for (DialogueAct &act : acts) {
    std::stable_sort(act.slots.begin(), act.slots.end(),
                     [](const Slot &a, const Slot &b) {
                       return a.attribute < b.attribute;
                     });
  }
  std::stable_sort(acts.begin(), acts.end(),
                   [](const DialogueAct &a, const DialogueAct &b) {
                     return ActTag(a.act) < ActTag(b.act);
                   });
  return MeaningRepresentation(std::move(acts), mr.supervision());
}

std::string SerializeMr(const MeaningRepresentation &mr, TokenMode mode) {
  std::string out;
  for (const Slot &slot : CanonicalOrder(mr).Slots()) {
    if (!out.empty()) out += ", ";
    out += slot.attribute;
    out += '[';
    out += slot.value;
    out += ']';
  }
  if (mode == TokenMode::kNoSupervision) return out;

  SupervisionKind kind = SupervisionKind::kPeriod;
  switch (mode) {
    case TokenMode::kPeriod: kind = SupervisionKind::kPeriod; break;
    case TokenMode::kDistributeBinary:
      kind = SupervisionKind::kDistributeBinary;
      break;
    case TokenMode::kDistributeSemantic:
      kind = SupervisionKind::kDistributeSemantic;
      break;
    case TokenMode::kContrastBinary:
      kind = SupervisionKind::kContrastBinary;
      break;
    case TokenMode::kNoSupervision: break;
  }
  const SupervisionToken *token = mr.Token(kind);
  if (!token) {
    throw Error(ErrorCode::kMissingSupervisionToken,
                std::string(TokenModeName(mode)) + " for '" + out + "'");
  }
  out += ", ";
  out += token->ToString();
  return out;
}

Polarity EvalPolarity(const Slot &slot, const Lexicon &lexicon) {
  const Attribute *attribute = lexicon.attributes().Find(slot.attribute);
  if (attribute && attribute->scale == Scale::kEntity) return Polarity::kNeutral;
  if (auto p = lexicon.PolarityOf(slot)) return *p;
  throw Error(ErrorCode::kUnknownValue,
              slot.attribute + "=" + slot.value + " has no polarity entry");
}

bool ValuesEqual(const Slot &a, const Slot &b, const Lexicon &lexicon) {
  const Attribute *attr_a = lexicon.attributes().Find(a.attribute);
  const Attribute *attr_b = lexicon.attributes().Find(b.attribute);
  if (!attr_a || !attr_b || attr_a->scale != Scale::kScalar3 ||
      attr_b->scale != Scale::kScalar3) {
    return false;
  }
  auto adj_a = lexicon.Adjective(a);
  auto adj_b = lexicon.Adjective(b);
  return adj_a && adj_b && *adj_a == *adj_b;
}

}  // namespace sentplan
