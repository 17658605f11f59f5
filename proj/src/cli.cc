#include "sentplan/cli.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sentplan/corpus.h"
#include "sentplan/dataset.h"
#include "sentplan/error.h"
#include "sentplan/eval.h"
#include "sentplan/extract.h"
#include "sentplan/lexicon.h"
#include "sentplan/recipe.h"
#include "sentplan/stats.h"
#include "sentplan/text.h"

namespace sentplan {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Flags {
  std::string recipe;
  std::string lexicon;
  std::optional<uint64_t> seed;
  std::optional<double> scale;
  std::vector<std::string> in;
  std::string out;
  std::string format = "csv";
  std::string cues;
  int workers = 1;
  std::string gates;
};

struct Context {
  const Flags &flags;
  std::ostream &out;
  std::ostream &err;
};

std::vector<std::string> ParseCueList(std::string_view text) {
  std::vector<std::string> cues;
  for (std::string_view part : Split(text, ',')) {
    std::string cue = ToLower(Trim(part));
    if (!cue.empty()) cues.push_back(cue);
  }
  if (cues.empty()) throw Error(ErrorCode::kConfigError, "--cues lists no cue");
  return cues;
}

OutputFormat Format(const Flags &flags) {
  auto format = ParseOutputFormat(flags.format);
  if (!format) {
    throw Error(ErrorCode::kConfigError, "--format must be csv or jsonl");
  }
  return *format;
}

uint64_t RequireSeed(const Flags &flags, std::string_view command) {
  if (!flags.seed) {
    throw Error(ErrorCode::kConfigError, std::string(command) + " requires --seed");
  }
  return *flags.seed;
}

Lexicon LoadLexicon(const Flags &flags) {
  return flags.lexicon.empty() ? Lexicon::Default() : Lexicon::Load(flags.lexicon);
}

GenerateOptions Options(const Flags &flags, uint64_t seed) {
  if (flags.workers < 1) throw Error(ErrorCode::kConfigError, "--workers must be >= 1");
  if (flags.scale && !(*flags.scale > 0 && *flags.scale <= 1)) {
    throw Error(ErrorCode::kConfigError, "--scale must lie in (0, 1]");
  }
  GenerateOptions options;
  options.seed = seed;
  options.scale = flags.scale;
  options.workers = flags.workers;
  return options;
}

bool HasRowExtension(const fs::path &path) {
  std::string ext = path.extension().string();
  return ext == ".csv" || ext == ".jsonl" || ext == ".json";
}

// --out names a file when it carries a row extension, else a directory.
fs::path OutputFile(const Flags &flags, const std::string &stem, OutputFormat format) {
  fs::path out = flags.out.empty() ? fs::path(".") : fs::path(flags.out);
  if (!HasRowExtension(out)) {
    out /= stem + "." + std::string(OutputFormatName(format));
  }
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  return out;
}

const std::string &SingleInput(const Flags &flags, std::string_view command) {
  if (flags.in.size() != 1) {
    throw Error(ErrorCode::kConfigError,
                std::string(command) + " takes exactly one --in file");
  }
  return flags.in.front();
}

int RunGenerate(const Context &ctx) {
  const Flags &flags = ctx.flags;
  if (flags.recipe.empty()) throw Error(ErrorCode::kConfigError, "--recipe is required");
  uint64_t seed = RequireSeed(flags, "generate");
  DatasetRecipe recipe = LoadRecipe(flags.recipe);
  OutputFormat format = Format(flags);
  Lexicon lexicon = LoadLexicon(flags);
  PatternDb db = PatternDb::Build(lexicon);
  auto start = std::chrono::steady_clock::now();
  Corpus corpus = Generate(recipe, lexicon, db, Options(flags, seed));
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  fs::path dir = flags.out.empty() ? fs::path(".") : fs::path(flags.out);
  fs::create_directories(dir);
  ctx.out << "recipe " << recipe.name << " (" << RecipeKindName(recipe.kind)
          << "), seed " << seed << "\n";
  for (const CorpusSplit &split : corpus.splits) {
    for (TokenMode mode : split.modes) {
      std::vector<TextRow> rows;
      rows.reserve(split.rows.size());
      for (const DatasetRow &row : split.rows) rows.push_back(ToTextRow(row, mode));
      fs::path file = dir / (corpus.name + "." + split.name + "." +
                             std::string(TokenModeName(mode)) + "." +
                             std::string(OutputFormatName(format)));
      WriteRows(file, rows, format);
      ctx.out << std::left << std::setw(6) << split.name << std::right << std::setw(8)
              << rows.size() << "  " << file.string() << "\n";
    }
  }
  ctx.out << std::fixed << std::setprecision(2) << "generated in " << seconds << " s\n";
  return kExitOk;
}

int RunMine(const Context &ctx) {
  const Flags &flags = ctx.flags;
  const std::string &input = SingleInput(flags, "mine");
  std::vector<std::string> cues =
      flags.cues.empty() ? DefaultMiningCues() : ParseCueList(flags.cues);
  OutputFormat format = Format(flags);
  std::vector<TextRow> rows = ReadRows(input);
  std::vector<TextRow> mined = MineContrast(rows, cues);
  fs::path file = OutputFile(flags, fs::path(input).stem().string() + ".contrast", format);
  WriteRows(file, mined, format);
  ctx.out << "mined " << mined.size() << " of " << rows.size() << " rows -> "
          << file.string() << "\n";
  for (const std::string &cue : cues) {
    size_t n = 0;
    for (const TextRow &row : mined) n += HasContrastCue(row.ref, {cue});
    ctx.out << "  " << std::left << std::setw(10) << cue << std::right << n << "\n";
  }
  return kExitOk;
}

int RunMix(const Context &ctx) {
  const Flags &flags = ctx.flags;
  if (flags.recipe.empty()) throw Error(ErrorCode::kConfigError, "--recipe is required");
  uint64_t seed = RequireSeed(flags, "mix");
  DatasetRecipe recipe = LoadRecipe(flags.recipe);
  if (recipe.kind != RecipeKind::kMixture) {
    throw Error(ErrorCode::kConfigError, "recipe " + recipe.name + " is not a mixture");
  }
  if (!flags.cues.empty()) recipe.cues = ParseCueList(flags.cues);
  OutputFormat format = Format(flags);

  std::map<std::string, std::string> overrides;
  for (const std::string &spec : flags.in) {
    size_t eq = spec.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigError, "mix takes --in SOURCE=PATH, got " + spec);
    }
    overrides[spec.substr(0, eq)] = spec.substr(eq + 1);
  }
  fs::path recipe_dir;
  if (fs::exists(flags.recipe)) recipe_dir = fs::path(flags.recipe).parent_path();
  std::map<std::string, std::vector<TextRow>> cache;
  std::map<std::string, std::vector<TextRow>> sources;
  for (const MixSource &source : recipe.sources) {
    fs::path path = source.path;
    if (auto it = overrides.find(source.name); it != overrides.end()) {
      path = it->second;
      overrides.erase(it);
    } else if (path.is_relative() && !fs::exists(path) && !recipe_dir.empty()) {
      path = recipe_dir / path;
    }
    auto [it, fresh] = cache.try_emplace(path.string());
    if (fresh) it->second = ReadRows(path);
    sources[source.name] = it->second;
  }
  if (!overrides.empty()) {
    throw Error(ErrorCode::kConfigError,
                "recipe " + recipe.name + " has no source " + overrides.begin()->first);
  }
  std::vector<TextRow> rows = MixDatasets(recipe, sources, Options(flags, seed));
  fs::path file = OutputFile(flags, recipe.name, format);
  WriteRows(file, rows, format);
  ctx.out << "mixed " << rows.size() << " rows -> " << file.string() << "\n";
  return kExitOk;
}

int RunExpand(const Context &ctx) {
  const Flags &flags = ctx.flags;
  const std::string &input = SingleInput(flags, "expand");
  uint64_t seed = RequireSeed(flags, "expand");
  OutputFormat format = Format(flags);
  Lexicon lexicon = LoadLexicon(flags);
  std::vector<MeaningRepresentation> mrs = ReadMrs(input);
  std::vector<DatasetRow> rows = ExpandPeriodVariants(mrs, lexicon, Options(flags, seed));
  std::vector<TextRow> text;
  size_t realized = 0;
  for (const DatasetRow &row : rows) {
    text.push_back(ToTextRow(row, TokenMode::kPeriod));
    realized += !row.ref.empty();
  }
  fs::path file = OutputFile(flags, fs::path(input).stem().string() + ".expand", format);
  WriteRows(file, text, format);
  ctx.out << "expanded " << mrs.size() << " MRs into " << rows.size() << " rows ("
          << realized << " realized) -> " << file.string() << "\n";
  return kExitOk;
}

json OptionalJson(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }
json OptionalJson(const std::optional<bool> &v) { return v ? json(*v) : json(nullptr); }

std::string Cell(const std::optional<double> &v, int precision = 4) {
  if (!v) return "-";
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << *v;
  return s.str();
}

void PrintReport(const EvalReport &r, std::ostream &out) {
  std::optional<double> corr;
  if (r.period_correlation) corr = r.period_correlation->r;
  const std::vector<std::pair<std::string, std::string>> cols = {
      {"rows", std::to_string(r.rows)},
      {"SER", Cell(r.ser)},
      {"S", std::to_string(r.substitutions)},
      {"D", std::to_string(r.deletions)},
      {"I", std::to_string(r.insertions)},
      {"H", std::to_string(r.hallucinations)},
      {"period_acc", Cell(r.period_accuracy)},
      {"period_r", Cell(corr)},
      {"distrib_acc", Cell(r.distrib_accuracy)},
      {"distrib_high", Cell(r.distrib_accuracy_on_high)},
      {"attempts", std::to_string(r.contrast_attempts)},
      {"correct", Cell(r.contrast_correct_fraction)},
      {"complexity_acc", Cell(r.complexity_accuracy)},
  };
  for (const auto &[name, value] : cols) {
    size_t w = std::max(name.size(), value.size()) + 2;
    out << std::setw(static_cast<int>(w)) << name;
  }
  out << "\n";
  for (const auto &[name, value] : cols) {
    size_t w = std::max(name.size(), value.size()) + 2;
    out << std::setw(static_cast<int>(w)) << value;
  }
  out << "\n";
  if (r.period_correlation) {
    out << "period correlation p-value " << r.period_correlation->p_value << "\n";
  }
}

std::string ReportJsonl(const EvalReport &r) {
  std::string out;
  for (size_t i = 0; i < r.per_row.size(); ++i) {
    const RowScore &s = r.per_row[i];
    json j;
    j["row"] = i;
    j["ser"] = s.slots.Ser();
    j["S"] = s.slots.substitutions;
    j["D"] = s.slots.deletions;
    j["I"] = s.slots.insertions;
    j["H"] = s.slots.hallucinations;
    j["N"] = s.slots.slot_count;
    j["sentences"] = s.sentences;
    j["period_ok"] = OptionalJson(s.period_ok);
    j["distrib_ok"] = OptionalJson(s.distrib_ok);
    j["contrast_attempt"] = s.contrast.attempt;
    j["contrast_correct"] = s.contrast.correct;
    j["complexity_ok"] = OptionalJson(s.complexity_ok);
    out += j.dump() + "\n";
  }
  json summary;
  summary["rows"] = r.rows;
  summary["ser"] = r.ser;
  summary["S"] = r.substitutions;
  summary["D"] = r.deletions;
  summary["I"] = r.insertions;
  summary["H"] = r.hallucinations;
  summary["period_rows"] = r.period_rows;
  summary["period_accuracy"] = OptionalJson(r.period_accuracy);
  summary["period_correlation"] =
      r.period_correlation ? json(r.period_correlation->r) : json(nullptr);
  summary["period_p_value"] =
      r.period_correlation ? json(r.period_correlation->p_value) : json(nullptr);
  summary["distrib_rows"] = r.distrib_rows;
  summary["distrib_accuracy"] = OptionalJson(r.distrib_accuracy);
  summary["distrib_accuracy_on_high"] = OptionalJson(r.distrib_accuracy_on_high);
  summary["contrast_rows"] = r.contrast_rows;
  summary["contrast_attempts"] = r.contrast_attempts;
  summary["contrast_correct"] = OptionalJson(r.contrast_correct_fraction);
  summary["complexity_rows"] = r.complexity_rows;
  summary["complexity_accuracy"] = OptionalJson(r.complexity_accuracy);
  out += json{{"summary", summary}}.dump() + "\n";
  return out;
}

int RunEvaluate(const Context &ctx) {
  const Flags &flags = ctx.flags;
  const std::string &input = SingleInput(flags, "evaluate");
  Gates gates = flags.gates.empty() ? Gates{} : ParseGates(flags.gates);
  if (flags.workers < 1) throw Error(ErrorCode::kConfigError, "--workers must be >= 1");
  EvalOptions options;
  if (!flags.cues.empty()) options.cues = ParseCueList(flags.cues);
  Lexicon lexicon = LoadLexicon(flags);
  PatternDb db = PatternDb::Build(lexicon);

  std::vector<TextRow> text = ReadRows(input);
  std::vector<EvalRow> rows;
  rows.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    MeaningRepresentation mr;
    try {
      mr = ParseMr(text[i].mr);
    } catch (const Error &e) {
      throw Error(ErrorCode::kMalformedRow,
                  input + " row " + std::to_string(i + 1) + ": " + e.what());
    }
    RowMeta meta = MetaFromTokens(mr, text[i].meta);
    rows.push_back({std::move(mr), text[i].ref, meta.period, meta.distribute,
                    meta.contrast, meta.complexity});
  }
  EvalReport report = Evaluate(rows, db, options, flags.workers);
  PrintReport(report, ctx.out);
  if (!flags.out.empty()) {
    fs::path file = flags.out;
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    WriteFileAtomic(file, ReportJsonl(report));
    ctx.out << "report -> " << file.string() << "\n";
  }
  std::vector<std::string> violations = CheckGates(report, gates);
  for (const std::string &v : violations) ctx.err << "gate violated: " << v << "\n";
  return violations.empty() ? kExitOk : kExitGate;
}

int RunStats(const Context &ctx) {
  const Flags &flags = ctx.flags;
  const std::string &input = SingleInput(flags, "stats");
  std::vector<std::string> cues =
      flags.cues.empty() ? DefaultContrastCues() : ParseCueList(flags.cues);
  Lexicon lexicon = LoadLexicon(flags);
  CorpusStats stats = ComputeStats(ReadRows(input), lexicon, cues);
  std::string rendered =
      Format(flags) == OutputFormat::kJsonl ? FormatStatsJson(stats) : FormatStatsText(stats);
  ctx.out << rendered;
  if (!flags.out.empty()) WriteFileAtomic(flags.out, rendered);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Sentence planning corpora: generate, mine, mix, expand, evaluate, stats"};
  app.require_subcommand(1);
  Flags flags;
  uint64_t seed = 0;
  double scale = 1;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--recipe", flags.recipe, "built-in recipe name or recipe file");
    cmd->add_option("--lexicon", flags.lexicon, "lexicon file (default: built-in)");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--scale", scale, "fraction of the full-size counts, in (0, 1]");
    cmd->add_option("--in", flags.in, "input file(s); mix takes SOURCE=PATH");
    cmd->add_option("--out", flags.out, "output directory or file");
    cmd->add_option("--format", flags.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--cues", flags.cues, "comma-separated contrast cues");
    cmd->add_option("--workers", flags.workers, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gates", flags.gates, "ser=..,period=..,distrib=..,contrast=..,complexity=..");
  };
  std::map<std::string, int (*)(const Context &)> runners = {
      {"generate", RunGenerate}, {"mine", RunMine},         {"mix", RunMix},
      {"expand", RunExpand},     {"evaluate", RunEvaluate}, {"stats", RunStats},
  };
  const std::map<std::string, std::string> help = {
      {"generate", "synthesize a scoping, aggregation or contrast corpus"},
      {"mine", "keep rows whose reference carries a contrast cue"},
      {"mix", "assemble a contrast mixture from source corpora"},
      {"expand", "one row per feasible period count of every MR"},
      {"evaluate", "score (MR, text) rows for SER and plan accuracy"},
      {"stats", "distribution summary of a corpus file"},
  };
  for (const auto &[name, text] : help) add_common(app.add_subcommand(name, text));

  std::vector<const char *> argv;
  for (const std::string &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  CLI::App *cmd = app.get_subcommands().front();
  if (cmd->count("--seed")) flags.seed = seed;
  if (cmd->count("--scale")) flags.scale = scale;

  Context ctx{flags, out, err};
  try {
    return runners.at(cmd->get_name())(ctx);
  } catch (const Error &e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::kGateViolation ? kExitGate : kExitError;
  } catch (const std::exception &e) {
    err << "IoError: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace sentplan
