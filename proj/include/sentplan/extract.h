#ifndef SENTPLAN_EXTRACT_H_
#define SENTPLAN_EXTRACT_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sentplan/lexicon.h"
#include "sentplan/mr.h"

namespace sentplan {

// One detected slot; [begin, end) is the byte span of the matched phrase.
// Both slots of a distributive phrase share the phrase span.
struct RealizedSlot {
  std::string attribute;
  std::string value;
  size_t begin = 0;
  size_t end = 0;

  friend bool operator==(const RealizedSlot &, const RealizedSlot &) = default;
};

// Information extraction patterns over the lexicon closure: every rendered
// template, "{adj} {noun}" cores, bare categorical and entity values,
// distributive "{adj} {noun} and {noun}" phrases, placeholders and the
// lexicon's paraphrases. Matching is case-insensitive, token based and
// leftmost-longest.
class PatternDb {
 public:
  static PatternDb Build(const Lexicon &lexicon);

  // Detected slots in text order. Patterns whose attributes fall outside
  // `domains` are ignored. When `context` is given, its entity surface
  // values are matched too and ambiguous phrases resolve to attributes the
  // MR contains.
  std::vector<RealizedSlot> Extract(
      std::string_view text, DomainMask domains,
      const MeaningRepresentation *context = nullptr) const;

  const Lexicon &lexicon() const { return *lexicon_; }
  size_t size() const { return entries_.size(); }

  // Every pattern phrase with its slots, for inspection and testing.
  std::vector<std::pair<std::string, std::vector<Slot>>> Dump() const;

 private:
  struct Entry {
    std::string phrase;
    std::vector<Slot> slots;
    DomainMask domains = kAllDomains;
  };
  struct Node {
    std::map<std::string, int, std::less<>> next;
    std::vector<int> entries;
  };

  void Add(std::string_view phrase, std::vector<Slot> slots);

  const Lexicon *lexicon_ = nullptr;
  std::vector<Entry> entries_;
  std::vector<Node> nodes_;
};

// Slots of `text` for scoring against `mr`.
std::vector<RealizedSlot> ExtractForMr(const PatternDb &db,
                                       const MeaningRepresentation &mr,
                                       std::string_view text);

}  // namespace sentplan

#endif  // SENTPLAN_EXTRACT_H_
