#include "sentplan/corpus.h"

#include <algorithm>
#include <exception>
#include <numeric>

#include "sentplan/error.h"
#include "sentplan/realizer.h"
#include "sentplan/text.h"

namespace sentplan {

namespace {

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename T>
const T &Choose(const std::vector<T> &items, Rng &rng) {
  return items[std::uniform_int_distribution<size_t>(0, items.size() - 1)(rng)];
}

std::vector<std::string> ContentInventory(const Lexicon &lexicon, DomainMask domain) {
  std::vector<std::string> out;
  for (const std::string &a : lexicon.attributes().Inventory(domain)) {
    if (a != "name") out.push_back(a);
  }
  return out;
}

Slot RandomSlot(const std::string &attribute, const Lexicon &lexicon, Rng &rng) {
  const auto &values = lexicon.Values(attribute);
  if (values.empty()) {
    throw Error(ErrorCode::kConfigError, "lexicon lists no values for " + attribute);
  }
  return {attribute, Choose(values, rng)};
}

std::string NamePlaceholder(const Lexicon &lexicon) {
  const std::string *p = lexicon.Placeholder("name");
  return p ? *p : "xname";
}

MeaningRepresentation MakeMr(std::vector<Slot> slots) {
  DialogueAct inform{ActType::kInform, {}};
  DialogueAct recommend{ActType::kRecommend, {}};
  for (Slot &s : slots) {
    (s.attribute == "recommend" ? recommend : inform).slots.push_back(std::move(s));
  }
  std::vector<DialogueAct> acts;
  if (!inform.slots.empty()) acts.push_back(std::move(inform));
  if (!recommend.slots.empty()) acts.push_back(std::move(recommend));
  return MeaningRepresentation(std::move(acts));
}

// Splits the single sentence of an aggregation plan: every content unit
// after the first starts a new sentence with probability 1/5, so PERIOD
// is drawn as often as each of the four joining ops.
void SplitAtPeriods(SentencePlan &plan, Rng &rng) {
  std::vector<Sentence> out;
  std::uniform_int_distribution<int> pick(0, 4);
  for (Sentence &sentence : plan.sentences) {
    out.emplace_back();
    bool seen_content = false;
    for (PlanItem &item : sentence.items) {
      bool starts_unit = !IsHeadAttribute(item.attribute) &&
                         item.join != AggregationOp::kDistrib;
      if (starts_unit && seen_content && pick(rng) == 0) {
        out.emplace_back();
        item.join = AggregationOp::kPeriod;
      }
      if (!IsHeadAttribute(item.attribute)) seen_content = true;
      out.back().items.push_back(item);
    }
  }
  plan.sentences = std::move(out);
}

bool HasDistrib(const SentencePlan &plan) {
  for (const Sentence &s : plan.sentences) {
    for (const PlanItem &item : s.items) {
      if (item.join == AggregationOp::kDistrib) return true;
    }
  }
  return false;
}

std::vector<DatasetRow> RunJobs(size_t jobs, const RowMaker &make,
                                const GenerateOptions &options) {
  return options.parallel && options.workers > 1
             ? MakeRowsParallel(jobs, make, options.workers)
             : MakeRowsSerial(jobs, make);
}

double EffectiveScale(const DatasetRecipe &recipe, const GenerateOptions &options) {
  double scale = options.scale.value_or(recipe.scale);
  if (!(scale > 0 && scale <= 1)) {
    throw Error(ErrorCode::kConfigError, "scale must lie in (0, 1]");
  }
  return scale;
}

std::string Describe(const DatasetRow &row) {
  return "'" + SerializeMr(row.mr, TokenMode::kNoSupervision) + "' -> '" + row.ref + "'";
}

}  // namespace

uint64_t RowSeed(uint64_t seed, uint64_t group, uint64_t index) {
  return SplitMix(SplitMix(SplitMix(seed) ^ group) ^ index);
}

std::vector<DatasetRow> MakeRowsSerial(size_t jobs, const RowMaker &make) {
  std::vector<DatasetRow> rows;
  rows.reserve(jobs);
  for (size_t i = 0; i < jobs; ++i) rows.push_back(make(i));
  return rows;
}

std::vector<DatasetRow> MakeRowsParallel(size_t jobs, const RowMaker &make,
                                         int workers) {
  std::vector<DatasetRow> rows(jobs);
  std::exception_ptr failure;
  const long n = static_cast<long>(jobs);
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(1, workers))
  for (long i = 0; i < n; ++i) {
    try {
      rows[static_cast<size_t>(i)] = make(static_cast<size_t>(i));
    } catch (...) {
#pragma omp critical(sentplan_row_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

DatasetRow MakeScopingRow(int attrs, int period, const Lexicon &lexicon, Rng &rng) {
  std::vector<std::string> inventory = ContentInventory(lexicon, kE2E);
  if (attrs < 2 || static_cast<size_t>(attrs - 1) > inventory.size() || period < 1 ||
      period > attrs - 1) {
    throw Error(ErrorCode::kInfeasibleCell,
                "attrs=" + std::to_string(attrs) + " periods=" + std::to_string(period));
  }
  std::shuffle(inventory.begin(), inventory.end(), rng);
  std::vector<Slot> slots{{"name", NamePlaceholder(lexicon)}};
  for (int i = 0; i < attrs - 1; ++i) {
    slots.push_back(RandomSlot(inventory[static_cast<size_t>(i)], lexicon, rng));
  }
  MeaningRepresentation mr = MakeMr(std::move(slots));
  PlanDirectives directives;
  directives.period = period;
  SentencePlan plan = BuildPlan(mr, directives, lexicon, rng);
  SampleVariants(plan, rng);
  DatasetRow row;
  row.ref = Realize(plan, lexicon).text;
  row.meta.period = static_cast<int>(plan.sentences.size());
  row.meta.complexity = Complexity(plan);
  row.mr = mr.WithToken(SupervisionToken::Period(period));
  return row;
}

DatasetRow MakeAggregationRow(std::string_view price, std::string_view rating,
                              const Lexicon &lexicon, Rng &rng) {
  std::vector<std::string> extras;
  for (const std::string &a : ContentInventory(lexicon, kE2E)) {
    if (a != "priceRange" && a != "customerRating") extras.push_back(a);
  }
  std::shuffle(extras.begin(), extras.end(), rng);
  size_t extra_count =
      std::uniform_int_distribution<size_t>(0, extras.size())(rng);
  std::vector<Slot> slots{{"name", NamePlaceholder(lexicon)},
                          {"priceRange", std::string(price)},
                          {"customerRating", std::string(rating)}};
  for (size_t i = 0; i < extra_count; ++i) {
    slots.push_back(RandomSlot(extras[i], lexicon, rng));
  }
  MeaningRepresentation mr = MakeMr(std::move(slots));
  PlanDirectives directives;
  directives.period = 1;
  directives.distribute = true;
  SentencePlan plan = BuildPlan(mr, directives, lexicon, rng);
  SplitAtPeriods(plan, rng);
  SampleVariants(plan, rng);

  DatasetRow row;
  row.ref = Realize(plan, lexicon).text;
  bool distributed = HasDistrib(plan);
  DistributeValue value = DistributeValue::kNone;
  if (distributed) {
    auto parsed = ParseDistributeValue(price);
    if (!parsed) {
      throw Error(ErrorCode::kUnknownValue,
                  "distributed value '" + std::string(price) + "' is not low/average/high");
    }
    value = *parsed;
  }
  row.meta.period = static_cast<int>(plan.sentences.size());
  row.meta.distribute = value;
  row.meta.complexity = Complexity(plan);
  row.mr = mr.WithToken(SupervisionToken::Period(*row.meta.period))
               .WithToken(SupervisionToken::DistributeBinary(distributed))
               .WithToken(SupervisionToken::DistributeSemantic(value));
  return row;
}

Lexicon WithContrastCue(const Lexicon &lexicon, std::string_view cue) {
  Lexicon copy = lexicon;
  std::string word = ToLower(Trim(cue));
  if (word.empty()) throw Error(ErrorCode::kConfigError, "empty contrast cue");
  if (word == "however") {
    copy.SetCue("CONTRAST", ". However {clause}");
  } else {
    copy.SetCue("CONTRAST", ", " + word + " {clause}");
  }
  return copy;
}

DatasetRow MakeContrastRow(const Lexicon &lexicon, Rng &rng) {
  std::vector<std::string> inventory = ContentInventory(lexicon, kNYC);
  for (;;) {
    std::shuffle(inventory.begin(), inventory.end(), rng);
    size_t k = std::uniform_int_distribution<size_t>(2, inventory.size())(rng);
    std::vector<Slot> slots{{"name", NamePlaceholder(lexicon)}};
    bool pos = false;
    bool neg = false;
    for (size_t i = 0; i < k; ++i) {
      Slot slot = RandomSlot(inventory[i], lexicon, rng);
      if (slot.attribute != "recommend") {
        Polarity p = PolarityOrNeutral(slot, lexicon);
        pos |= p == Polarity::kPos;
        neg |= p == Polarity::kNeg;
      }
      slots.push_back(std::move(slot));
    }
    if (!pos || !neg) continue;

    MeaningRepresentation mr = MakeMr(std::move(slots));
    PlanDirectives directives;
    directives.contrast = true;
    SentencePlan plan = BuildPlan(mr, directives, lexicon, rng);
    SampleVariants(plan, rng);
    DatasetRow row;
    row.ref = Realize(plan, lexicon).text;
    // A cue that opens its own sentence adds one.
    size_t extra = lexicon.Cue("CONTRAST").rfind(".", 0) == 0 ? 1 : 0;
    size_t sentences = plan.sentences.size() + extra;
    row.meta.period = static_cast<int>(sentences);
    row.meta.contrast = true;
    row.meta.complexity = ComplexityForCounts(plan.NonNameCount(), sentences);
    row.mr = mr.WithToken(SupervisionToken::Period(*row.meta.period))
                 .WithToken(SupervisionToken::ContrastBinary(true));
    return row;
  }
}

void GateRows(const std::vector<DatasetRow> &rows, const PatternDb &db, int workers) {
  std::vector<EvalRow> eval;
  eval.reserve(rows.size());
  for (const DatasetRow &row : rows) {
    eval.push_back({row.mr, row.ref, row.meta.period, row.meta.distribute,
                    row.meta.contrast, row.meta.complexity});
  }
  EvalOptions options;
  std::vector<RowScore> scores = workers > 1
                                     ? ScoreRowsParallel(eval, db, options, workers)
                                     : ScoreRowsSerial(eval, db, options);
  for (size_t i = 0; i < rows.size(); ++i) {
    const RowScore &s = scores[i];
    std::string problem;
    if (s.slots.Errors() != 0) {
      problem = "SER " + std::to_string(s.slots.Ser()) + " (S=" +
                std::to_string(s.slots.substitutions) +
                " D=" + std::to_string(s.slots.deletions) +
                " I=" + std::to_string(s.slots.insertions) +
                " H=" + std::to_string(s.slots.hallucinations) + ")";
    } else if (s.period_ok && !*s.period_ok) {
      problem = "period " + std::to_string(s.sentences) + " != " +
                std::to_string(*rows[i].meta.period);
    } else if (s.distrib_ok && !*s.distrib_ok) {
      problem = "distribution mismatch";
    } else if (rows[i].meta.contrast && *rows[i].meta.contrast && !s.contrast.correct) {
      problem = "contrast not realized";
    } else if (s.complexity_ok && !*s.complexity_ok) {
      problem = "complexity mismatch";
    }
    if (!problem.empty()) {
      throw Error(ErrorCode::kGateViolation,
                  "row " + std::to_string(i) + ": " + problem + ": " + Describe(rows[i]));
    }
  }
}

Corpus GenerateScoping(const DatasetRecipe &recipe, const Lexicon &lexicon,
                       const PatternDb &db, const GenerateOptions &options) {
  const double scale = EffectiveScale(recipe, options);
  struct Job {
    int attrs;
    int period;
    uint64_t group;
    uint64_t index;
  };
  std::vector<Job> jobs;
  const size_t inventory = ContentInventory(lexicon, kE2E).size();
  for (size_t c = 0; c < recipe.distribution.size(); ++c) {
    const ScopingCell &cell = recipe.distribution[c];
    if (cell.count == 0) continue;
    if (cell.periods > cell.attrs - 1 || cell.attrs < 2 ||
        static_cast<size_t>(cell.attrs - 1) > inventory) {
      throw Error(ErrorCode::kInfeasibleCell,
                  "attrs=" + std::to_string(cell.attrs) + " periods=" +
                      std::to_string(cell.periods) + " count=" +
                      std::to_string(cell.count));
    }
    long n = ScaledCount(cell.count, scale);
    for (long i = 0; i < n; ++i) {
      jobs.push_back({cell.attrs, cell.periods,
                      static_cast<uint64_t>(cell.attrs * 16 + cell.periods),
                      static_cast<uint64_t>(i)});
    }
  }
  RowMaker make = [&](size_t j) {
    const Job &job = jobs[j];
    Rng rng(RowSeed(options.seed, job.group, job.index));
    return MakeScopingRow(job.attrs, job.period, lexicon, rng);
  };
  Corpus corpus{recipe.name, {}};
  CorpusSplit split{"train", RunJobs(jobs.size(), make, options),
                    {TokenMode::kNoSupervision, TokenMode::kPeriod}};
  if (options.gate) GateRows(split.rows, db, options.parallel ? options.workers : 1);
  corpus.splits.push_back(std::move(split));
  return corpus;
}

Corpus GenerateAggregation(const DatasetRecipe &recipe, const Lexicon &lexicon,
                           const PatternDb &db, const GenerateOptions &options) {
  const double scale = EffectiveScale(recipe, options);
  Corpus corpus{recipe.name, {}};
  uint64_t split_group = 0;
  for (const auto &[name, cells] :
       {std::pair{std::string("train"), &recipe.train},
        std::pair{std::string("test"), &recipe.test}}) {
    ++split_group;
    if (cells->empty()) continue;
    struct Job {
      const ValuePairCell *cell;
      uint64_t group;
      uint64_t index;
    };
    std::vector<Job> jobs;
    for (size_t c = 0; c < cells->size(); ++c) {
      const ValuePairCell &cell = (*cells)[c];
      if (name == "train") {
        for (const auto &[price, rating] : recipe.holdouts) {
          if (cell.price == price && cell.rating == rating && cell.count > 0) {
            throw Error(ErrorCode::kConfigError,
                        "holdout " + price + "/" + rating + " requested in train");
          }
        }
      }
      long n = ScaledCount(cell.count, scale);
      for (long i = 0; i < n; ++i) {
        jobs.push_back({&cell, split_group * 1000 + c, static_cast<uint64_t>(i)});
      }
    }
    RowMaker make = [&](size_t j) {
      const Job &job = jobs[j];
      Rng rng(RowSeed(options.seed, job.group, job.index));
      return MakeAggregationRow(job.cell->price, job.cell->rating, lexicon, rng);
    };
    CorpusSplit split{name, RunJobs(jobs.size(), make, options),
                      {TokenMode::kNoSupervision, TokenMode::kDistributeBinary,
                       TokenMode::kDistributeSemantic}};
    if (options.gate) GateRows(split.rows, db, options.parallel ? options.workers : 1);
    corpus.splits.push_back(std::move(split));
  }
  return corpus;
}

Corpus GenerateContrast(const DatasetRecipe &recipe, const Lexicon &lexicon,
                        const PatternDb &db, const GenerateOptions &options) {
  const double scale = EffectiveScale(recipe, options);
  Lexicon cued = WithContrastCue(lexicon, recipe.contrast_cue);
  long n = ScaledCount(recipe.rows, scale);
  RowMaker make = [&](size_t j) {
    Rng rng(RowSeed(options.seed, 7, j));
    return MakeContrastRow(cued, rng);
  };
  Corpus corpus{recipe.name, {}};
  CorpusSplit split{"train", RunJobs(static_cast<size_t>(n), make, options),
                    {TokenMode::kNoSupervision, TokenMode::kContrastBinary}};
  if (options.gate) GateRows(split.rows, db, options.parallel ? options.workers : 1);
  corpus.splits.push_back(std::move(split));
  return corpus;
}

Corpus Generate(const DatasetRecipe &recipe, const Lexicon &lexicon,
                const PatternDb &db, const GenerateOptions &options) {
  switch (recipe.kind) {
    case RecipeKind::kScoping: return GenerateScoping(recipe, lexicon, db, options);
    case RecipeKind::kAggregation:
      return GenerateAggregation(recipe, lexicon, db, options);
    case RecipeKind::kContrastNyc: return GenerateContrast(recipe, lexicon, db, options);
    case RecipeKind::kMixture: break;
  }
  throw Error(ErrorCode::kConfigError,
              "recipe " + recipe.name + " is a mixture; use the mix command");
}

const std::vector<std::string> &DefaultMiningCues() {
  static const std::vector<std::string> cues = {"but", "although", "even if"};
  return cues;
}

bool HasContrastCue(std::string_view text, const std::vector<std::string> &cues) {
  return std::any_of(cues.begin(), cues.end(), [&](const std::string &cue) {
    return !FindWord(text, cue).empty();
  });
}

std::vector<TextRow> MineContrast(const std::vector<TextRow> &rows,
                                  const std::vector<std::string> &cues) {
  std::vector<TextRow> out;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (Trim(rows[i].mr).empty()) {
      throw Error(ErrorCode::kMalformedRow, "row " + std::to_string(i) + " has no MR");
    }
    if (HasContrastCue(rows[i].ref, cues)) out.push_back(rows[i]);
  }
  return out;
}

std::vector<DatasetRow> ExpandPeriodVariants(
    const std::vector<MeaningRepresentation> &mrs, const Lexicon &lexicon,
    const GenerateOptions &options) {
  struct Job {
    size_t mr;
    int period;
  };
  std::vector<Job> jobs;
  for (size_t i = 0; i < mrs.size(); ++i) {
    if (mrs[i].size() < 2) {
      throw Error(ErrorCode::kPeriodOutOfRange,
                  "MR " + std::to_string(i) + " has fewer than 2 slots");
    }
    for (int p = 1; p < static_cast<int>(mrs[i].size()); ++p) jobs.push_back({i, p});
  }
  RowMaker make = [&](size_t j) {
    const Job &job = jobs[j];
    Rng rng(RowSeed(options.seed, job.mr, static_cast<uint64_t>(job.period)));
    MeaningRepresentation mr = mrs[job.mr].WithoutSupervision();
    DatasetRow row;
    row.mr = mr.WithToken(SupervisionToken::Period(job.period));
    row.meta.period = job.period;
    PlanDirectives directives;
    directives.period = job.period;
    try {
      SentencePlan plan = BuildPlan(mr, directives, lexicon, rng);
      SampleVariants(plan, rng);
      row.ref = Realize(plan, lexicon).text;
      row.meta.complexity = Complexity(plan);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kPeriodOutOfRange) throw;
    }
    return row;
  };
  return RunJobs(jobs.size(), make, options);
}

std::string StampContrast(std::string_view mr_text, bool flag) {
  std::string out;
  int depth = 0;
  size_t start = 0;
  auto flush = [&](size_t end) {
    std::string_view token = Trim(mr_text.substr(start, end - start));
    if (!token.empty() && token.rfind("contrast[", 0) != 0) {
      if (!out.empty()) out += ", ";
      out += token;
    }
  };
  for (size_t i = 0; i < mr_text.size(); ++i) {
    char c = mr_text[i];
    if (c == '[') ++depth;
    if (c == ']' && depth > 0) --depth;
    if (c == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  flush(mr_text.size());
  if (!out.empty()) out += ", ";
  out += flag ? "contrast[1]" : "contrast[0]";
  return out;
}

std::vector<TextRow> MixDatasets(
    const DatasetRecipe &recipe,
    const std::map<std::string, std::vector<TextRow>> &sources,
    const GenerateOptions &options) {
  const double scale = EffectiveScale(recipe, options);
  const std::vector<std::string> &cues =
      recipe.cues.empty() ? DefaultMiningCues() : recipe.cues;
  std::vector<TextRow> out;
  for (size_t s = 0; s < recipe.sources.size(); ++s) {
    const MixSource &source = recipe.sources[s];
    auto it = sources.find(source.name);
    if (it == sources.end()) {
      throw Error(ErrorCode::kIoError, "source " + source.name + " was not supplied");
    }
    std::vector<size_t> candidates;
    for (size_t i = 0; i < it->second.size(); ++i) {
      const TextRow &row = it->second[i];
      bool cue = HasContrastCue(row.ref, cues);
      if (source.filter == SourceFilter::kContrast && !cue) continue;
      if (source.filter == SourceFilter::kNonContrast && cue) continue;
      candidates.push_back(i);
    }
    size_t want = static_cast<size_t>(ScaledCount(source.count, scale));
    if (want > candidates.size()) {
      throw Error(ErrorCode::kSourceTooSmall,
                  "source " + source.name + " offers " +
                      std::to_string(candidates.size()) + " rows, recipe wants " +
                      std::to_string(want));
    }
    Rng rng(RowSeed(options.seed, 0x6d6978 + s, 0));
    std::shuffle(candidates.begin(), candidates.end(), rng);
    candidates.resize(want);
    std::sort(candidates.begin(), candidates.end());
    for (size_t i : candidates) {
      TextRow row = it->second[i];
      if (recipe.stamp_contrast) {
        bool cue = HasContrastCue(row.ref, cues);
        row.mr = StampContrast(row.mr, cue);
        row.meta.contrast = cue;
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace sentplan
