#ifndef SENTPLAN_REALIZER_H_
#define SENTPLAN_REALIZER_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentplan/lexicon.h"
#include "sentplan/planner.h"

namespace sentplan {

struct Utterance {
  std::string text;
  bool lexicalized = false;
  int sentence_count = 0;
};

// Renders one sentence per plan group. The name is the subject of the
// first sentence and "it" of every later clause; adjacent content is joined
// by the lexicon cue of its aggregation op, CONTRAST pairs by the contrast
// cue and the first JUSTIFY satellite by the justify cue. Values are
// rendered exactly as they appear in the MR, so placeholder MRs yield
// delexicalized text.
Utterance Realize(const SentencePlan &plan, const Lexicon &lexicon);

struct TemplateFillers {
  const Slot *slot = nullptr;  // supplies {val}
  std::optional<std::string> adjective;
  std::string name;
  std::string noun1;
  std::string noun2;
};

// Substitutes template placeholders; {art} becomes "a" or "an" by the
// initial letter of the following word.
std::string RenderTemplate(std::string_view tmpl, const TemplateFillers &f);

// Draws a template variant for every plan item.
void SampleVariants(SentencePlan &plan, Rng &rng);

// from -> to replacement table.
using EntityMap = std::map<std::string, std::string>;

// Entity surface values of `mr` mapped to the lexicon placeholders
// (Zizzi -> xname, Avalon -> xnear).
EntityMap DelexicalizationMap(const MeaningRepresentation &mr,
                              const Lexicon &lexicon);
EntityMap Invert(const EntityMap &map);

// Replaces every whole-word occurrence of a surface entity by its
// placeholder, longest match first, in one left-to-right pass.
std::string Delexicalize(std::string_view text, const EntityMap &entities);

struct Relexicalized {
  std::string text;
  // Placeholder-like words (x + lowercase letters) with no mapping.
  std::vector<std::string> unknown_placeholders;
};

Relexicalized Relexicalize(std::string_view text, const EntityMap &entities);

// Counts sentence-final '.', '!' or '?' runs: a run must be followed by
// whitespace or the end of text, so "4.5" or "£20.50" do not split.
int CountSentences(std::string_view text);

}  // namespace sentplan

#endif  // SENTPLAN_REALIZER_H_
