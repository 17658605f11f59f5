#include "sentplan/recipe.h"

#include <cmath>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sentplan/dataset.h"
#include "sentplan/embedded_data.h"
#include "sentplan/error.h"
#include "sentplan/text.h"

namespace sentplan {

namespace {

namespace pt = boost::property_tree;

struct Builtin {
  std::string_view name;
  std::string_view text;
};

constexpr Builtin kBuiltins[] = {
    {"scoping", embedded::kRecipeScoping},
    {"aggregation", embedded::kRecipeAggregation},
    {"contrast_nyc", embedded::kRecipeContrastNyc},
    {"3k", embedded::kRecipe3k},
    {"7k", embedded::kRecipe7k},
    {"11k", embedded::kRecipe11k},
    {"21k", embedded::kRecipe21k},
    {"21k_contrast", embedded::kRecipe21kContrast},
};

Error ConfigError(std::string_view origin, const std::string &what) {
  return Error(ErrorCode::kConfigError, std::string(origin) + ": " + what);
}

long ParseCount(std::string_view text, std::string_view origin) {
  std::string s(Trim(text));
  size_t used = 0;
  long value = -1;
  try {
    value = std::stol(s, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != s.size() || value < 0) {
    throw ConfigError(origin, "bad count '" + s + "'");
  }
  return value;
}

std::pair<std::string, std::string> ParsePair(std::string_view text,
                                              std::string_view origin) {
  size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw ConfigError(origin, "want <price>/<rating>, got '" + std::string(text) + "'");
  }
  return {std::string(Trim(text.substr(0, slash))),
          std::string(Trim(text.substr(slash + 1)))};
}

std::vector<ValuePairCell> ParsePairs(const pt::ptree &section,
                                      std::string_view origin) {
  std::vector<ValuePairCell> cells;
  for (const auto &[key, value] : section) {
    auto [price, rating] = ParsePair(key, origin);
    cells.push_back({price, rating, ParseCount(value.data(), origin)});
  }
  return cells;
}

bool ParseBool(std::string_view text, std::string_view origin) {
  std::string s = ToLower(Trim(text));
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(origin, "bad flag '" + s + "'");
}

}  // namespace

std::string_view RecipeKindName(RecipeKind kind) {
  switch (kind) {
    case RecipeKind::kScoping: return "scoping";
    case RecipeKind::kAggregation: return "aggregation";
    case RecipeKind::kContrastNyc: return "contrast_nyc";
    case RecipeKind::kMixture: return "mixture";
  }
  return "scoping";
}

long ScaledCount(long count, double scale) {
  if (count <= 0) return 0;
  // Guard against 0.02 * 3745 landing a hair above an integer.
  double scaled = static_cast<double>(count) * scale;
  return static_cast<long>(std::ceil(scaled - 1e-9));
}

DatasetRecipe ParseRecipe(std::string_view text, std::string_view origin) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error &e) {
    throw ConfigError(origin, e.message() + " at line " + std::to_string(e.line()));
  }
  DatasetRecipe recipe;
  auto header = tree.get_child_optional("recipe");
  if (!header) throw ConfigError(origin, "missing [recipe] section");
  recipe.name = header->get<std::string>("name", std::string(origin));
  std::string kind = header->get<std::string>("kind", "");
  if (kind == "scoping") recipe.kind = RecipeKind::kScoping;
  else if (kind == "aggregation") recipe.kind = RecipeKind::kAggregation;
  else if (kind == "contrast_nyc") recipe.kind = RecipeKind::kContrastNyc;
  else if (kind == "mixture") recipe.kind = RecipeKind::kMixture;
  else throw ConfigError(origin, "unknown kind '" + kind + "'");
  recipe.scale = header->get<double>("scale", 1.0);
  if (!(recipe.scale > 0 && recipe.scale <= 1)) {
    throw ConfigError(origin, "scale must lie in (0, 1]");
  }
  if (auto seed = header->get_optional<uint64_t>("seed")) recipe.seed = *seed;
  if (auto rows = header->get_optional<std::string>("rows")) {
    recipe.rows = ParseCount(*rows, origin);
  }
  recipe.contrast_cue = header->get<std::string>("cue", "but");
  if (auto stamp = header->get_optional<std::string>("stamp_contrast")) {
    recipe.stamp_contrast = ParseBool(*stamp, origin);
  }
  if (auto cues = header->get_optional<std::string>("cues")) {
    for (std::string_view cue : Split(*cues, ',')) {
      if (!Trim(cue).empty()) recipe.cues.emplace_back(Trim(cue));
    }
  }

  for (const auto &[section, body] : tree) {
    if (section == "distribution") {
      for (const auto &[key, value] : body) {
        int attrs = static_cast<int>(ParseCount(key, origin));
        std::istringstream counts(value.data());
        std::string field;
        int period = 0;
        while (counts >> field) {
          ++period;
          recipe.distribution.push_back({attrs, period, ParseCount(field, origin)});
        }
      }
    } else if (section == "train") {
      recipe.train = ParsePairs(body, origin);
    } else if (section == "test") {
      recipe.test = ParsePairs(body, origin);
    } else if (section == "holdout") {
      std::istringstream pairs(body.get<std::string>("pairs", ""));
      std::string pair;
      while (pairs >> pair) recipe.holdouts.push_back(ParsePair(pair, origin));
    } else if (section.rfind("source.", 0) == 0) {
      MixSource source;
      source.name = section.substr(7);
      source.path = body.get<std::string>("path", "");
      source.count = ParseCount(body.get<std::string>("count", ""), origin);
      std::string filter = body.get<std::string>("filter", "all");
      if (filter == "all") source.filter = SourceFilter::kAll;
      else if (filter == "contrast") source.filter = SourceFilter::kContrast;
      else if (filter == "noncontrast") source.filter = SourceFilter::kNonContrast;
      else throw ConfigError(origin, "unknown filter '" + filter + "'");
      if (source.path.empty()) {
        throw ConfigError(origin, "source " + source.name + " has no path");
      }
      recipe.sources.push_back(std::move(source));
    } else if (section != "recipe") {
      throw ConfigError(origin, "unknown section [" + section + "]");
    }
  }

  for (const auto &[price, rating] : recipe.holdouts) {
    for (const ValuePairCell &cell : recipe.train) {
      if (cell.price == price && cell.rating == rating && cell.count > 0) {
        throw ConfigError(origin, "holdout " + price + "/" + rating +
                                      " has training rows");
      }
    }
  }
  switch (recipe.kind) {
    case RecipeKind::kScoping:
      if (recipe.distribution.empty()) throw ConfigError(origin, "empty [distribution]");
      break;
    case RecipeKind::kAggregation:
      if (recipe.train.empty() && recipe.test.empty()) {
        throw ConfigError(origin, "no [train] or [test] cells");
      }
      break;
    case RecipeKind::kContrastNyc:
      if (recipe.rows <= 0) throw ConfigError(origin, "rows must be positive");
      break;
    case RecipeKind::kMixture:
      if (recipe.sources.empty()) throw ConfigError(origin, "no [source.*] sections");
      break;
  }
  return recipe;
}

DatasetRecipe LoadRecipe(std::string_view name_or_path) {
  for (const Builtin &b : kBuiltins) {
    if (b.name == name_or_path) return ParseRecipe(b.text, b.name);
  }
  std::filesystem::path path(name_or_path);
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kConfigError,
                "no built-in recipe or file named '" + std::string(name_or_path) + "'");
  }
  return ParseRecipe(ReadFile(path), path.string());
}

std::vector<std::string> BuiltinRecipeNames() {
  std::vector<std::string> names;
  for (const Builtin &b : kBuiltins) names.emplace_back(b.name);
  return names;
}

}  // namespace sentplan
