#include "sentplan/lexicon.h"

#include <fstream>
#include <sstream>

#include "sentplan/embedded_data.h"
#include "sentplan/error.h"
#include "sentplan/text.h"

namespace sentplan {

namespace {

const std::vector<std::string> &EmptyList() {
  static const std::vector<std::string> kEmpty;
  return kEmpty;
}

std::string TemplateKey(std::string_view attribute, TemplateKind kind) {
  return std::string(attribute) + ":" + std::string(TemplateKindName(kind));
}

Error FormatError(std::string_view origin, int line, const std::string &what) {
  return Error(ErrorCode::kConfigError, std::string(origin) + ":" +
                                            std::to_string(line) + ": " + what);
}

// "attr=value" -> Slot. The value may itself contain '='.
std::optional<Slot> ParseSlotKey(std::string_view key) {
  size_t eq = key.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == key.size()) {
    return std::nullopt;
  }
  return Slot{std::string(key.substr(0, eq)), std::string(key.substr(eq + 1))};
}

std::optional<Scale> ParseScale(std::string_view text) {
  if (text == "scalar3") return Scale::kScalar3;
  if (text == "categorical") return Scale::kCategorical;
  if (text == "boolean") return Scale::kBoolean;
  if (text == "entity") return Scale::kEntity;
  return std::nullopt;
}

constexpr std::string_view kRequiredCues[] = {
    "PERIOD", "WITH_CUE", "CONJUNCTION", "ALL_MERGE",
    "ALSO_CUE", "DISTRIB", "CONTRAST", "JUSTIFY"};

}  // namespace

std::string_view TemplateKindName(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kPred: return "pred";
    case TemplateKind::kWith: return "with";
    case TemplateKind::kClause: return "clause";
    case TemplateKind::kHead: return "head";
  }
  return "pred";
}

Lexicon Lexicon::Parse(std::string_view text, std::string_view origin) {
  Lexicon lex;
  lex.attributes_ = AttributeRegistry::Builtin();
  std::string section;
  int line_no = 0;
  for (std::string_view raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw FormatError(origin, line_no, "bad section");
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      continue;
    }
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw FormatError(origin, line_no, "expected key<TAB>value");
    }
    std::string_view key = Trim(line.substr(0, tab));
    std::string value(Trim(line.substr(tab + 1)));
    if (key.empty() || value.empty()) {
      throw FormatError(origin, line_no, "empty key or value");
    }

    if (section.empty()) {
      if (key != "version") throw FormatError(origin, line_no, "entry outside section");
      lex.version_ = std::stoi(value);
      if (lex.version_ != 1) {
        throw FormatError(origin, line_no, "unsupported version " + value);
      }
    } else if (section == "attributes") {
      auto fields = Split(value, ' ');
      if (fields.size() != 2) throw FormatError(origin, line_no, "want '<domains> <scale>'");
      DomainMask mask = 0;
      for (std::string_view d : Split(fields[0], ',')) {
        if (d == "e2e") mask |= kE2E;
        else if (d == "nyc") mask |= kNYC;
        else throw FormatError(origin, line_no, "unknown domain " + std::string(d));
      }
      auto scale = ParseScale(fields[1]);
      if (!scale) throw FormatError(origin, line_no, "unknown scale");
      lex.attributes_.Add({std::string(key), mask, *scale});
    } else if (section == "values") {
      lex.values_[std::string(key)].push_back(value);
    } else if (section == "templates") {
      lex.templates_[std::string(key)].push_back(value);
    } else if (section == "adjectives") {
      auto slot = ParseSlotKey(key);
      if (!slot) throw FormatError(origin, line_no, "want attr=value key");
      lex.adjectives_[*slot] = value;
    } else if (section == "nouns") {
      lex.nouns_[std::string(key)].push_back(value);
    } else if (section == "cues") {
      lex.cues_[std::string(key)] = value;
    } else if (section == "polarity") {
      auto slot = ParseSlotKey(key);
      if (!slot) throw FormatError(origin, line_no, "want attr=value key");
      if (value == "POS") lex.polarity_[*slot] = Polarity::kPos;
      else if (value == "NEG") lex.polarity_[*slot] = Polarity::kNeg;
      else if (value == "NEUTRAL") lex.polarity_[*slot] = Polarity::kNeutral;
      else throw FormatError(origin, line_no, "polarity must be POS/NEG/NEUTRAL");
    } else if (section == "entities") {
      lex.placeholders_[std::string(key)] = value;
    } else if (section == "patterns") {
      auto slot = ParseSlotKey(value);
      if (!slot) throw FormatError(origin, line_no, "want attr=value target");
      lex.paraphrases_.emplace_back(std::string(key), *slot);
    } else {
      throw FormatError(origin, line_no, "unknown section " + section);
    }
  }
  lex.Validate(origin);
  return lex;
}

Lexicon Lexicon::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path.string());
}

const Lexicon &Lexicon::Default() {
  static const Lexicon *lexicon =
      new Lexicon(Parse(embedded::kRestaurantLexicon, "restaurant.lex"));
  return *lexicon;
}

void Lexicon::Validate(std::string_view origin) const {
  auto fail = [&](const std::string &what) {
    return Error(ErrorCode::kConfigError, std::string(origin) + ": " + what);
  };
  for (std::string_view cue : kRequiredCues) {
    if (!HasCue(cue)) throw fail("missing cue " + std::string(cue));
  }
  for (const Attribute &a : attributes_.attributes()) {
    if (a.name == "name") continue;
    const std::vector<std::string> &values = Values(a.name);
    if (a.name == "recommend") {
      for (const std::string &v : {std::string("yes"), std::string("no")}) {
        if (Templates({a.name, v}, TemplateKind::kHead).empty()) {
          throw fail("recommend=" + v + " needs a head template");
        }
      }
      continue;
    }
    bool has_generic = templates_.count(TemplateKey(a.name, TemplateKind::kPred));
    for (const std::string &v : values) {
      Slot slot{a.name, v};
      if (!has_generic && Templates(slot, TemplateKind::kPred).empty()) {
        throw fail("no pred template for " + a.name + "=" + v);
      }
      if (Templates(slot, TemplateKind::kWith).empty()) {
        throw fail("no with template for " + a.name + "=" + v);
      }
      if (a.scale == Scale::kScalar3 && !Adjective(slot)) {
        throw fail("no adjective for scalar value " + a.name + "=" + v);
      }
    }
    if (values.empty() && !has_generic) {
      throw fail("attribute " + a.name + " has no templates");
    }
  }
  if (DistribTemplates(TemplateKind::kPred).empty() ||
      DistribTemplates(TemplateKind::kWith).empty()) {
    throw fail("missing *distrib templates");
  }
}

const std::vector<std::string> &Lexicon::Templates(const Slot &slot,
                                                   TemplateKind kind) const {
  auto specific = templates_.find(slot.attribute + "=" + slot.value + ":" +
                                  std::string(TemplateKindName(kind)));
  if (specific != templates_.end()) return specific->second;
  auto generic = templates_.find(TemplateKey(slot.attribute, kind));
  if (generic != templates_.end()) return generic->second;
  return EmptyList();
}

const std::vector<std::string> &Lexicon::DistribTemplates(
    TemplateKind kind) const {
  auto it = templates_.find(TemplateKey("*distrib", kind));
  return it == templates_.end() ? EmptyList() : it->second;
}

std::optional<std::string> Lexicon::Adjective(const Slot &slot) const {
  auto it = adjectives_.find(slot);
  if (it == adjectives_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string> &Lexicon::Nouns(std::string_view attribute) const {
  auto it = nouns_.find(attribute);
  return it == nouns_.end() ? EmptyList() : it->second;
}

const std::vector<std::string> &Lexicon::Values(std::string_view attribute) const {
  auto it = values_.find(attribute);
  return it == values_.end() ? EmptyList() : it->second;
}

const std::string &Lexicon::Cue(std::string_view key) const {
  auto it = cues_.find(key);
  if (it == cues_.end()) {
    throw Error(ErrorCode::kMissingTemplate, "no cue " + std::string(key));
  }
  return it->second;
}

bool Lexicon::HasCue(std::string_view key) const {
  return cues_.find(key) != cues_.end();
}

std::optional<Polarity> Lexicon::PolarityOf(const Slot &slot) const {
  auto it = polarity_.find(slot);
  if (it == polarity_.end()) return std::nullopt;
  return it->second;
}

const std::string *Lexicon::Placeholder(std::string_view attribute) const {
  auto it = placeholders_.find(attribute);
  return it == placeholders_.end() ? nullptr : &it->second;
}

void Lexicon::SetCue(std::string_view key, std::string pattern) {
  cues_[std::string(key)] = std::move(pattern);
}

}  // namespace sentplan
