#ifndef SENTPLAN_EVAL_H_
#define SENTPLAN_EVAL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentplan/extract.h"
#include "sentplan/lexicon.h"
#include "sentplan/mr.h"
#include "sentplan/planner.h"

namespace sentplan {

struct SlotMatchResult {
  int substitutions = 0;   // S
  int deletions = 0;       // D
  int insertions = 0;      // I: repeats of an attribute of the MR
  int hallucinations = 0;  // H: distinct attributes absent from the MR
  int slot_count = 0;      // N, name and recommend included
  std::vector<RealizedSlot> realized;

  double Ser() const {
    return static_cast<double>(substitutions + deletions + insertions +
                               hallucinations) /
           slot_count;
  }
  int Errors() const {
    return substitutions + deletions + insertions + hallucinations;
  }
};

// Scores extracted slots against the MR. Values compare case-insensitively.
SlotMatchResult MatchSlots(const MeaningRepresentation &mr,
                           std::vector<RealizedSlot> realized);

// Throws EmptyMR for an MR without slots.
SlotMatchResult SlotErrorRate(const MeaningRepresentation &mr,
                              std::string_view text, const PatternDb &db);

struct Correlation {
  double r = 0;
  double p_value = 1;  // two-sided, t approximation with n-2 dof
};

// Pearson correlation; nullopt when either side has zero variance or
// fewer than two points.
std::optional<Correlation> Pearson(const std::vector<double> &x,
                                   const std::vector<double> &y);

struct PeriodMetrics {
  size_t rows = 0;
  double accuracy = 0;
  std::optional<Correlation> correlation;
};

struct PeriodRow {
  int target = 0;
  std::string text;
};

PeriodMetrics ComputePeriodMetrics(const std::vector<PeriodRow> &rows);

// A "{adj} {noun} and {noun}" phrase over scalar attribute nouns.
struct DistributiveForm {
  std::string adjective;
  std::string noun1;
  std::string noun2;
  bool distinct = false;  // the nouns name different attributes
};

std::vector<DistributiveForm> FindDistributiveForms(std::string_view text,
                                                    const Lexicon &lexicon);

// Expected none: no distributive form. Expected v: some form with
// adjective v over two distinct attribute nouns.
bool DistributionCorrect(DistributeValue expected, std::string_view text,
                         const Lexicon &lexicon);

struct DistribMetrics {
  size_t rows = 0;
  double accuracy = 0;
  size_t high_rows = 0;
  std::optional<double> accuracy_on_high;
};

struct DistribRow {
  DistributeValue expected = DistributeValue::kNone;
  std::string text;
};

DistribMetrics ComputeDistribMetrics(const std::vector<DistribRow> &rows,
                                     const Lexicon &lexicon);

const std::vector<std::string> &DefaultContrastCues();

struct ContrastJudgement {
  bool attempt = false;
  bool correct = false;
};

// Attempt: a cue occurs. Correct: for some occurrence, the clauses on its
// two sides hold a POS and a NEG inform slot of the MR, one on each side.
// Clauses end at cues and sentence boundaries; a cue opening a sentence
// takes the previous sentence as its left clause.
ContrastJudgement JudgeContrast(const MeaningRepresentation &mr,
                                std::string_view text,
                                const std::vector<std::string> &cues,
                                const PatternDb &db);

struct ContrastMetrics {
  size_t rows = 0;
  size_t attempts = 0;
  size_t correct = 0;
  std::optional<double> correct_fraction;
};

struct ContrastRow {
  MeaningRepresentation mr;
  std::string text;
};

ContrastMetrics ComputeContrastMetrics(const std::vector<ContrastRow> &rows,
                                       const std::vector<std::string> &cues,
                                       const PatternDb &db);

// Label from extracted non-name slots over count_sentences.
ComplexityLabel RealizedComplexity(const MeaningRepresentation &mr,
                                   std::string_view text, const PatternDb &db);

struct ComplexityRow {
  ComplexityLabel expected = ComplexityLabel::kLow;
  MeaningRepresentation mr;
  std::string text;
};

double ComputeComplexityAccuracy(const std::vector<ComplexityRow> &rows,
                                 const PatternDb &db);

// A row to score: the MR, the text and whichever plan expectations the
// row carries.
struct EvalRow {
  MeaningRepresentation mr;
  std::string text;
  std::optional<int> period;
  std::optional<DistributeValue> distribute;
  std::optional<bool> contrast;
  std::optional<ComplexityLabel> complexity;
};

struct RowScore {
  SlotMatchResult slots;
  int sentences = 0;
  std::optional<bool> period_ok;
  std::optional<bool> distrib_ok;
  ContrastJudgement contrast;
  std::optional<bool> complexity_ok;

  friend bool operator==(const RowScore &a, const RowScore &b) {
    return a.slots.substitutions == b.slots.substitutions &&
           a.slots.deletions == b.slots.deletions &&
           a.slots.insertions == b.slots.insertions &&
           a.slots.hallucinations == b.slots.hallucinations &&
           a.slots.slot_count == b.slots.slot_count &&
           a.slots.realized == b.slots.realized && a.sentences == b.sentences &&
           a.period_ok == b.period_ok && a.distrib_ok == b.distrib_ok &&
           a.contrast.attempt == b.contrast.attempt &&
           a.contrast.correct == b.contrast.correct &&
           a.complexity_ok == b.complexity_ok;
  }
};

struct EvalOptions {
  std::vector<std::string> cues = DefaultContrastCues();
};

RowScore ScoreRow(const EvalRow &row, const PatternDb &db,
                  const EvalOptions &options);

// Serial reference and OpenMP scoring; both return scores in row order.
std::vector<RowScore> ScoreRowsSerial(const std::vector<EvalRow> &rows,
                                      const PatternDb &db,
                                      const EvalOptions &options);
std::vector<RowScore> ScoreRowsParallel(const std::vector<EvalRow> &rows,
                                        const PatternDb &db,
                                        const EvalOptions &options,
                                        int workers);

struct EvalReport {
  size_t rows = 0;
  double ser = 0;  // mean per-row SER
  long substitutions = 0;
  long deletions = 0;
  long insertions = 0;
  long hallucinations = 0;
  size_t period_rows = 0;
  std::optional<double> period_accuracy;
  std::optional<Correlation> period_correlation;
  size_t distrib_rows = 0;
  std::optional<double> distrib_accuracy;
  size_t distrib_high_rows = 0;
  std::optional<double> distrib_accuracy_on_high;
  size_t contrast_rows = 0;  // rows expected to contrast
  size_t contrast_attempts = 0;
  size_t contrast_correct = 0;
  std::optional<double> contrast_correct_fraction;
  // Share of rows expected to contrast that realize a correct contrast.
  std::optional<double> contrast_expected_accuracy;
  size_t complexity_rows = 0;
  std::optional<double> complexity_accuracy;
  std::vector<RowScore> per_row;
};

EvalReport Summarize(const std::vector<EvalRow> &rows,
                     std::vector<RowScore> scores);

EvalReport Evaluate(const std::vector<EvalRow> &rows, const PatternDb &db,
                    const EvalOptions &options = {}, int workers = 1);

struct Gates {
  double max_ser = 0.0;
  double min_period_accuracy = 1.0;
  double min_distrib_accuracy = 1.0;
  double min_contrast_correct = 1.0;
  double min_complexity_accuracy = 1.0;
};

// "ser=0.05,period=0.9,..." with keys ser period distrib contrast
// complexity; unspecified keys keep their defaults.
Gates ParseGates(std::string_view text);

// Descriptions of violated gates; empty when all pass. Metrics absent from
// the report are not gated.
std::vector<std::string> CheckGates(const EvalReport &report, const Gates &gates);

}  // namespace sentplan

#endif  // SENTPLAN_EVAL_H_
