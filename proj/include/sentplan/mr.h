#ifndef SENTPLAN_MR_H_
#define SENTPLAN_MR_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentplan {

class Lexicon;

// Domains are bit flags so that an attribute shared by both inventories
// (name) and an MR mixing attributes from both can be described.
using DomainMask = unsigned;
inline constexpr DomainMask kE2E = 1u;
inline constexpr DomainMask kNYC = 2u;
inline constexpr DomainMask kAllDomains = kE2E | kNYC;

enum class Scale { kScalar3, kCategorical, kBoolean, kEntity };

struct Attribute {
  std::string name;
  DomainMask domains = 0;
  Scale scale = Scale::kCategorical;
};

class AttributeRegistry {
 public:
  // E2E: name eatType food priceRange customerRating area familyFriendly near.
  // NYC: name recommend cuisine decor qual location price service.
  static const AttributeRegistry &Builtin();

  const Attribute *Find(std::string_view name) const;

  // Adds an attribute or replaces the definition of an existing one.
  void Add(Attribute attribute);

  // Attribute names belonging to any domain in `domains`, in registration
  // order.
  std::vector<std::string> Inventory(DomainMask domains) const;

  const std::vector<Attribute> &attributes() const { return attributes_; }

 private:
  std::vector<Attribute> attributes_;
};

struct Slot {
  std::string attribute;
  std::string value;

  friend bool operator==(const Slot &, const Slot &) = default;
  friend auto operator<=>(const Slot &, const Slot &) = default;
};

enum class ActType { kInform, kRecommend };

std::string_view ActTag(ActType act);

struct DialogueAct {
  ActType act = ActType::kInform;
  std::vector<Slot> slots;

  friend bool operator==(const DialogueAct &, const DialogueAct &) = default;
};

enum class SupervisionKind {
  kPeriod,
  kDistributeBinary,
  kDistributeSemantic,
  kContrastBinary,
};

enum class DistributeValue { kNone, kLow, kAverage, kHigh };

std::string_view DistributeValueName(DistributeValue value);
std::optional<DistributeValue> ParseDistributeValue(std::string_view text);

struct SupervisionToken {
  SupervisionKind kind = SupervisionKind::kPeriod;
  // Period count, or the 0/1 flag of the binary tokens.
  int number = 0;
  DistributeValue distribute = DistributeValue::kNone;

  static SupervisionToken Period(int count);
  static SupervisionToken DistributeBinary(bool on);
  static SupervisionToken DistributeSemantic(DistributeValue value);
  static SupervisionToken ContrastBinary(bool on);

  // `kind[value]` rendering, e.g. "period[3]" or "distribute[high]".
  std::string ToString() const;

  friend bool operator==(const SupervisionToken &,
                         const SupervisionToken &) = default;
};

enum class TokenMode {
  kNoSupervision,
  kPeriod,
  kDistributeBinary,
  kDistributeSemantic,
  kContrastBinary,
};

std::string_view TokenModeName(TokenMode mode);
std::optional<TokenMode> ParseTokenMode(std::string_view text);

enum class Polarity { kPos, kNeg, kNeutral };

std::string_view PolarityName(Polarity polarity);

// A set of dialogue acts plus optional supervision tokens. Immutable once
// constructed; the constructor enforces one slot per attribute, exactly one
// name slot and at most one token per kind.
class MeaningRepresentation {
 public:
  MeaningRepresentation() = default;
  MeaningRepresentation(std::vector<DialogueAct> acts,
                        std::vector<SupervisionToken> supervision = {});

  const std::vector<DialogueAct> &acts() const { return acts_; }
  const std::vector<SupervisionToken> &supervision() const {
    return supervision_;
  }

  // Every content slot, in act order.
  std::vector<Slot> Slots() const;

  // Number of content slots, name included.
  size_t size() const;

  const Slot *Find(std::string_view attribute) const;
  bool Has(std::string_view attribute) const { return Find(attribute); }
  const SupervisionToken *Token(SupervisionKind kind) const;
  const std::string &name() const;

  // Union of the domains of all slot attributes.
  DomainMask Domains(const AttributeRegistry &registry) const;

  MeaningRepresentation WithToken(SupervisionToken token) const;
  MeaningRepresentation WithoutSupervision() const;

  friend bool operator==(const MeaningRepresentation &,
                         const MeaningRepresentation &) = default;

 private:
  std::vector<DialogueAct> acts_;
  std::vector<SupervisionToken> supervision_;
};

// Parses an E2E-style line: comma separated `attr[value]` tokens.
// Supervision tokens (period, distribute, contrast) use the same syntax and
// are separated from content slots. `recommend` forms its own act.
MeaningRepresentation ParseMr(
    std::string_view text,
    const AttributeRegistry &registry = AttributeRegistry::Builtin());

// Canonical slot list followed by the token required by `mode`.
std::string SerializeMr(const MeaningRepresentation &mr, TokenMode mode);

// Acts sorted by tag, slots within each act sorted by attribute name.
MeaningRepresentation CanonicalOrder(const MeaningRepresentation &mr);

Polarity EvalPolarity(const Slot &slot, const Lexicon &lexicon);

// True iff both attributes are scalar3 and their values share an adjective.
bool ValuesEqual(const Slot &a, const Slot &b, const Lexicon &lexicon);

}  // namespace sentplan

#endif  // SENTPLAN_MR_H_
