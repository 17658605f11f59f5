#include <benchmark/benchmark.h>

#include "sentplan/corpus.h"
#include "sentplan/eval.h"
#include "sentplan/recipe.h"

namespace {

using namespace sentplan;

const PatternDb &Db() {
  static const PatternDb db = PatternDb::Build(Lexicon::Default());
  return db;
}

const std::vector<DatasetRow> &ScopingRows() {
  static const std::vector<DatasetRow> rows = [] {
    GenerateOptions options;
    options.seed = 1;
    options.scale = 0.05;
    options.gate = false;
    options.parallel = false;
    return GenerateScoping(LoadRecipe("scoping"), Lexicon::Default(), Db(), options)
        .splits.front()
        .rows;
  }();
  return rows;
}

void BM_GenerateScoping(benchmark::State &state) {
  DatasetRecipe recipe = LoadRecipe("scoping");
  GenerateOptions options;
  options.seed = 7;
  options.scale = 0.05;
  options.gate = false;
  options.workers = static_cast<int>(state.range(0));
  options.parallel = state.range(0) > 0;
  size_t rows = 0;
  for (auto _ : state) {
    Corpus corpus = GenerateScoping(recipe, Lexicon::Default(), Db(), options);
    rows = corpus.splits.front().rows.size();
    benchmark::DoNotOptimize(corpus);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * rows));
}
// 0 selects the serial reference.
BENCHMARK(BM_GenerateScoping)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ScoreRows(benchmark::State &state) {
  std::vector<EvalRow> rows;
  for (const DatasetRow &row : ScopingRows()) {
    rows.push_back({row.mr, row.ref, row.meta.period, {}, {}, row.meta.complexity});
  }
  EvalOptions options;
  int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto scores = workers == 0 ? ScoreRowsSerial(rows, Db(), options)
                               : ScoreRowsParallel(rows, Db(), options, workers);
    benchmark::DoNotOptimize(scores);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * rows.size()));
}
BENCHMARK(BM_ScoreRows)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
