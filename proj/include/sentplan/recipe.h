#ifndef SENTPLAN_RECIPE_H_
#define SENTPLAN_RECIPE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentplan {

enum class RecipeKind { kScoping, kAggregation, kContrastNyc, kMixture };

std::string_view RecipeKindName(RecipeKind kind);

// Attribute count (name included) by period count.
struct ScopingCell {
  int attrs = 0;
  int periods = 0;
  long count = 0;
};

// priceRange / customerRating value combination.
struct ValuePairCell {
  std::string price;
  std::string rating;
  long count = 0;
};

enum class SourceFilter { kAll, kContrast, kNonContrast };

struct MixSource {
  std::string name;
  std::string path;
  long count = 0;
  SourceFilter filter = SourceFilter::kAll;
};

// Recipes are INI files:
//
//   [recipe]        name, kind, scale, seed (optional), rows, cue,
//                   stamp_contrast, cues
//   [distribution]  <attrs> = <count for period 1> ... <count for period 7>
//   [train] [test]  <price>/<rating> = <count>
//   [holdout]       pairs = <price>/<rating> [<price>/<rating> ...]
//   [source.NAME]   path, count, filter = all | contrast | noncontrast
struct DatasetRecipe {
  std::string name;
  RecipeKind kind = RecipeKind::kScoping;
  double scale = 1.0;
  std::optional<uint64_t> seed;
  std::vector<ScopingCell> distribution;
  std::vector<ValuePairCell> train;
  std::vector<ValuePairCell> test;
  std::vector<std::pair<std::string, std::string>> holdouts;
  long rows = 0;  // contrast_nyc
  std::string contrast_cue = "but";
  std::vector<MixSource> sources;
  bool stamp_contrast = false;
  std::vector<std::string> cues;  // mining cues; empty means the defaults
};

DatasetRecipe ParseRecipe(std::string_view text, std::string_view origin = "");

// A built-in recipe name (scoping, aggregation, contrast_nyc, 3k, 7k, 11k,
// 21k, 21k_contrast) or a path to a recipe file.
DatasetRecipe LoadRecipe(std::string_view name_or_path);

std::vector<std::string> BuiltinRecipeNames();

// Rows for a full-scale count at `scale`: ceil(scale * count).
long ScaledCount(long count, double scale);

}  // namespace sentplan

#endif  // SENTPLAN_RECIPE_H_
