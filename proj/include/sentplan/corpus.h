#ifndef SENTPLAN_CORPUS_H_
#define SENTPLAN_CORPUS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentplan/dataset.h"
#include "sentplan/eval.h"
#include "sentplan/extract.h"
#include "sentplan/lexicon.h"
#include "sentplan/planner.h"
#include "sentplan/recipe.h"

namespace sentplan {

struct GenerateOptions {
  uint64_t seed = 0;
  std::optional<double> scale;  // overrides the recipe's scale
  int workers = 1;
  bool parallel = true;  // false forces the serial reference path
  bool gate = true;      // score every row before returning it
};

struct CorpusSplit {
  std::string name;  // train or test
  std::vector<DatasetRow> rows;
  std::vector<TokenMode> modes;  // serializations to write
};

struct Corpus {
  std::string name;
  std::vector<CorpusSplit> splits;
};

// Seed for row `index` of group `group`. Rows draw only from their own
// generator, so output does not depend on the worker count.
uint64_t RowSeed(uint64_t seed, uint64_t group, uint64_t index);

using RowMaker = std::function<DatasetRow(size_t job)>;

// Serial reference and OpenMP kernels; both return rows in job order.
std::vector<DatasetRow> MakeRowsSerial(size_t jobs, const RowMaker &make);
std::vector<DatasetRow> MakeRowsParallel(size_t jobs, const RowMaker &make,
                                         int workers);

// Single-row generators, exposed for tests and benchmarks.
DatasetRow MakeScopingRow(int attrs, int period, const Lexicon &lexicon, Rng &rng);
DatasetRow MakeAggregationRow(std::string_view price, std::string_view rating,
                              const Lexicon &lexicon, Rng &rng);
DatasetRow MakeContrastRow(const Lexicon &lexicon, Rng &rng);

// Lexicon copy whose CONTRAST cue realizes `cue` ("but" -> ", but ...",
// "however" -> ". However ...").
Lexicon WithContrastCue(const Lexicon &lexicon, std::string_view cue);

Corpus GenerateScoping(const DatasetRecipe &recipe, const Lexicon &lexicon,
                       const PatternDb &db, const GenerateOptions &options);
Corpus GenerateAggregation(const DatasetRecipe &recipe, const Lexicon &lexicon,
                           const PatternDb &db, const GenerateOptions &options);
Corpus GenerateContrast(const DatasetRecipe &recipe, const Lexicon &lexicon,
                        const PatternDb &db, const GenerateOptions &options);
// Dispatches on recipe.kind; mixtures are rejected (see MixDatasets).
Corpus Generate(const DatasetRecipe &recipe, const Lexicon &lexicon,
                const PatternDb &db, const GenerateOptions &options);

// Scores rows and throws GateViolation naming the first row that fails
// SER = 0 or any plan expectation it carries.
void GateRows(const std::vector<DatasetRow> &rows, const PatternDb &db,
              int workers);

// but, although, even if.
const std::vector<std::string> &DefaultMiningCues();

bool HasContrastCue(std::string_view text, const std::vector<std::string> &cues);

// Rows whose reference carries a cue (case-insensitive, whole words).
// Throws MalformedRow for a row with an empty MR.
std::vector<TextRow> MineContrast(const std::vector<TextRow> &rows,
                                  const std::vector<std::string> &cues);

// One row per period count 1..N-1 of every MR (N counts the name). The
// reference is realized when the period is feasible for the MR's plan and
// left empty otherwise.
std::vector<DatasetRow> ExpandPeriodVariants(
    const std::vector<MeaningRepresentation> &mrs, const Lexicon &lexicon,
    const GenerateOptions &options);

// Replaces any contrast token of an MR line by contrast[flag].
std::string StampContrast(std::string_view mr_text, bool flag);

// Concatenates each source's sample, drawn without replacement after the
// source's filter; throws SourceTooSmall when a filter leaves too few rows.
// Filters and stamping use the recipe's cues, else the mining cues.
std::vector<TextRow> MixDatasets(
    const DatasetRecipe &recipe,
    const std::map<std::string, std::vector<TextRow>> &sources,
    const GenerateOptions &options);

}  // namespace sentplan

#endif  // SENTPLAN_CORPUS_H_
