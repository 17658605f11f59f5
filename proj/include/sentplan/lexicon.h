#ifndef SENTPLAN_LEXICON_H_
#define SENTPLAN_LEXICON_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sentplan/mr.h"

namespace sentplan {

// Template kinds:
//   pred    predicate following a subject ("is a {val}")
//   with    prepositional phrase used by the "with" cue
//   clause  complete clause carrying its own subject ("the service is {adj}")
//   head    recommendation head wrapping the name ("I would suggest {name}")
enum class TemplateKind { kPred, kWith, kClause, kHead };

std::string_view TemplateKindName(TemplateKind kind);

// Lexicon file format (version 1). Sections in brackets, one `key<TAB>value`
// entry per line, '#' starts a comment line. Repeated keys accumulate.
//
//   [attributes]  attr        -> "<e2e|nyc|e2e,nyc> <scalar3|categorical|boolean|entity>"
//   [values]      attr        -> corpus value
//   [templates]   attr:kind   -> template   (attr=value:kind for value-specific)
//   [adjectives]  attr=value  -> adjective
//   [nouns]       attr        -> noun (first entry is used for rendering)
//   [cues]        OP          -> connective pattern
//   [polarity]    attr=value  -> POS | NEG | NEUTRAL
//   [entities]    attr        -> placeholder
//   [patterns]    phrase      -> attr=value
//
// Template placeholders: {val} {adj} {art} {name} {noun1} {noun2}; cue
// placeholders: {pred} {with} {clause}. The pseudo attribute `*distrib`
// holds the templates of the distributive form.
class Lexicon {
 public:
  static Lexicon Parse(std::string_view text, std::string_view origin = "");
  static Lexicon Load(const std::filesystem::path &path);

  // The restaurant lexicon compiled into the library.
  static const Lexicon &Default();

  const AttributeRegistry &attributes() const { return attributes_; }
  int version() const { return version_; }

  // Value-specific templates when present, otherwise the attribute's
  // generic templates. Empty when neither exists.
  const std::vector<std::string> &Templates(const Slot &slot,
                                            TemplateKind kind) const;
  const std::vector<std::string> &DistribTemplates(TemplateKind kind) const;

  std::optional<std::string> Adjective(const Slot &slot) const;
  const std::vector<std::string> &Nouns(std::string_view attribute) const;
  const std::vector<std::string> &Values(std::string_view attribute) const;

  // Connective pattern for an aggregation op or discourse relation name.
  const std::string &Cue(std::string_view key) const;
  bool HasCue(std::string_view key) const;

  std::optional<Polarity> PolarityOf(const Slot &slot) const;
  const std::map<Slot, Polarity> &polarity_table() const { return polarity_; }

  // Placeholder for an entity attribute, e.g. name -> xname.
  const std::string *Placeholder(std::string_view attribute) const;
  const std::map<std::string, std::string, std::less<>> &placeholders() const {
    return placeholders_;
  }

  const std::vector<std::pair<std::string, Slot>> &paraphrases() const {
    return paraphrases_;
  }
  const std::map<Slot, std::string> &adjectives() const { return adjectives_; }

  // Replaces the cue pattern of `key`; used to switch the contrast cue.
  void SetCue(std::string_view key, std::string pattern);

 private:
  void Validate(std::string_view origin) const;

  int version_ = 1;
  AttributeRegistry attributes_;
  std::map<std::string, std::vector<std::string>, std::less<>> templates_;
  std::map<Slot, std::string> adjectives_;
  std::map<std::string, std::vector<std::string>, std::less<>> nouns_;
  std::map<std::string, std::vector<std::string>, std::less<>> values_;
  std::map<std::string, std::string, std::less<>> cues_;
  std::map<Slot, Polarity> polarity_;
  std::map<std::string, std::string, std::less<>> placeholders_;
  std::vector<std::pair<std::string, Slot>> paraphrases_;
};

}  // namespace sentplan

#endif  // SENTPLAN_LEXICON_H_
