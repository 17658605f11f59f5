#include "sentplan/eval.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <set>

#include <boost/math/distributions/students_t.hpp>

#include "sentplan/error.h"
#include "sentplan/realizer.h"
#include "sentplan/text.h"

namespace sentplan {

namespace {

bool SameValue(std::string_view a, std::string_view b) {
  return ToLower(a) == ToLower(b);
}

struct Span {
  size_t begin = 0;
  size_t end = 0;
};

// Sentence spans using the same boundary rule as CountSentences.
std::vector<Span> SentenceSpans(std::string_view text) {
  std::vector<Span> spans;
  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    while (i < text.size() && (text[i] == '.' || text[i] == '!' || text[i] == '?')) {
      ++i;
    }
    if (i == text.size() || std::isspace(static_cast<unsigned char>(text[i]))) {
      spans.push_back({start, i});
      start = i;
    }
  }
  if (start < text.size() && !Trim(text.substr(start)).empty()) {
    spans.push_back({start, text.size()});
  }
  return spans;
}

bool HasWord(std::string_view text) {
  return std::any_of(text.begin(), text.end(), [](char c) { return IsWordChar(c); });
}

// Longest run of `tokens` starting at `i` that spells one of `phrases`;
// returns the phrase index or -1 and sets `len`.
int LongestPhrase(const std::vector<TextToken> &tokens, size_t i,
                  const std::vector<std::vector<std::string>> &phrases,
                  size_t &len) {
  int best = -1;
  len = 0;
  for (size_t p = 0; p < phrases.size(); ++p) {
    const auto &phrase = phrases[p];
    if (phrase.size() <= len || i + phrase.size() > tokens.size()) continue;
    bool match = true;
    for (size_t k = 0; k < phrase.size() && match; ++k) {
      match = tokens[i + k].text == phrase[k];
    }
    if (match) {
      best = static_cast<int>(p);
      len = phrase.size();
    }
  }
  return best;
}

std::vector<std::string> TokenTexts(std::string_view phrase) {
  std::vector<std::string> out;
  for (TextToken &t : Tokenize(phrase)) out.push_back(std::move(t.text));
  return out;
}

}  // namespace

SlotMatchResult MatchSlots(const MeaningRepresentation &mr,
                           std::vector<RealizedSlot> realized) {
  SlotMatchResult result;
  std::vector<Slot> slots = mr.Slots();
  result.slot_count = static_cast<int>(slots.size());
  for (const Slot &slot : slots) {
    int detections = 0;
    bool matched = false;
    for (const RealizedSlot &r : realized) {
      if (r.attribute != slot.attribute) continue;
      ++detections;
      if (SameValue(r.value, slot.value)) matched = true;
    }
    if (detections == 0) {
      ++result.deletions;
      continue;
    }
    if (!matched) ++result.substitutions;
    result.insertions += detections - 1;
  }
  std::set<std::string> extra;
  for (const RealizedSlot &r : realized) {
    if (!mr.Has(r.attribute)) extra.insert(r.attribute);
  }
  result.hallucinations = static_cast<int>(extra.size());
  result.realized = std::move(realized);
  return result;
}

SlotMatchResult SlotErrorRate(const MeaningRepresentation &mr,
                              std::string_view text, const PatternDb &db) {
  if (mr.size() == 0) throw Error(ErrorCode::kEmptyMr, "MR has no slots");
  return MatchSlots(mr, ExtractForMr(db, mr, text));
}

std::optional<Correlation> Pearson(const std::vector<double> &x,
                                   const std::vector<double> &y) {
  const size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  double mx = 0;
  double my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return std::nullopt;
  Correlation c;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (n < 3) {
    c.p_value = 1;
  } else if (std::abs(c.r) >= 1.0) {
    c.p_value = 0;
  } else {
    double dof = static_cast<double>(n - 2);
    double t = c.r * std::sqrt(dof / (1 - c.r * c.r));
    boost::math::students_t dist(dof);
    c.p_value = 2 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  }
  return c;
}

PeriodMetrics ComputePeriodMetrics(const std::vector<PeriodRow> &rows) {
  PeriodMetrics m;
  m.rows = rows.size();
  if (rows.empty()) return m;
  std::vector<double> target;
  std::vector<double> realized;
  size_t hits = 0;
  for (const PeriodRow &row : rows) {
    int n = CountSentences(row.text);
    if (n == row.target) ++hits;
    target.push_back(row.target);
    realized.push_back(n);
  }
  m.accuracy = static_cast<double>(hits) / static_cast<double>(rows.size());
  m.correlation = Pearson(target, realized);
  return m;
}

std::vector<DistributiveForm> FindDistributiveForms(std::string_view text,
                                                    const Lexicon &lexicon) {
  std::vector<std::vector<std::string>> adjectives;
  std::vector<std::string> adjective_text;
  std::vector<std::vector<std::string>> nouns;
  std::vector<std::string> noun_text;
  std::vector<std::set<std::string>> noun_attributes;
  for (const Attribute &a : lexicon.attributes().attributes()) {
    if (a.scale != Scale::kScalar3) continue;
    for (const auto &[slot, adjective] : lexicon.adjectives()) {
      if (slot.attribute != a.name) continue;
      if (std::find(adjective_text.begin(), adjective_text.end(), adjective) ==
          adjective_text.end()) {
        adjective_text.push_back(adjective);
        adjectives.push_back(TokenTexts(adjective));
      }
    }
    for (const std::string &noun : lexicon.Nouns(a.name)) {
      auto it = std::find(noun_text.begin(), noun_text.end(), noun);
      if (it == noun_text.end()) {
        noun_text.push_back(noun);
        nouns.push_back(TokenTexts(noun));
        noun_attributes.push_back({a.name});
      } else {
        noun_attributes[static_cast<size_t>(it - noun_text.begin())].insert(a.name);
      }
    }
  }

  std::vector<TextToken> tokens = Tokenize(text);
  std::vector<DistributiveForm> forms;
  size_t i = 0;
  while (i < tokens.size()) {
    size_t adj_len = 0;
    int adj = LongestPhrase(tokens, i, adjectives, adj_len);
    if (adj < 0) {
      ++i;
      continue;
    }
    size_t j = i + adj_len;
    size_t n1_len = 0;
    int n1 = LongestPhrase(tokens, j, nouns, n1_len);
    if (n1 < 0 || j + n1_len >= tokens.size() || tokens[j + n1_len].text != "and") {
      ++i;
      continue;
    }
    size_t k = j + n1_len + 1;
    size_t n2_len = 0;
    int n2 = LongestPhrase(tokens, k, nouns, n2_len);
    if (n2 < 0) {
      ++i;
      continue;
    }
    const auto &a1 = noun_attributes[static_cast<size_t>(n1)];
    const auto &a2 = noun_attributes[static_cast<size_t>(n2)];
    bool disjoint = std::none_of(a1.begin(), a1.end(),
                                 [&](const std::string &a) { return a2.count(a); });
    forms.push_back({adjective_text[static_cast<size_t>(adj)],
                     noun_text[static_cast<size_t>(n1)],
                     noun_text[static_cast<size_t>(n2)], disjoint});
    i = k + n2_len;
  }
  return forms;
}

bool DistributionCorrect(DistributeValue expected, std::string_view text,
                         const Lexicon &lexicon) {
  std::vector<DistributiveForm> forms = FindDistributiveForms(text, lexicon);
  if (expected == DistributeValue::kNone) return forms.empty();
  std::string_view want = DistributeValueName(expected);
  return std::any_of(forms.begin(), forms.end(), [&](const DistributiveForm &f) {
    return f.distinct && SameValue(f.adjective, want);
  });
}

DistribMetrics ComputeDistribMetrics(const std::vector<DistribRow> &rows,
                                     const Lexicon &lexicon) {
  DistribMetrics m;
  m.rows = rows.size();
  size_t hits = 0;
  size_t high_hits = 0;
  for (const DistribRow &row : rows) {
    bool ok = DistributionCorrect(row.expected, row.text, lexicon);
    if (ok) ++hits;
    if (row.expected == DistributeValue::kHigh) {
      ++m.high_rows;
      if (ok) ++high_hits;
    }
  }
  if (!rows.empty()) m.accuracy = static_cast<double>(hits) / static_cast<double>(rows.size());
  if (m.high_rows) {
    m.accuracy_on_high = static_cast<double>(high_hits) / static_cast<double>(m.high_rows);
  }
  return m;
}

const std::vector<std::string> &DefaultContrastCues() {
  static const std::vector<std::string> cues = {"but", "although", "even if",
                                                "however", "yet"};
  return cues;
}

ContrastJudgement JudgeContrast(const MeaningRepresentation &mr,
                                std::string_view text,
                                const std::vector<std::string> &cues,
                                const PatternDb &db) {
  ContrastJudgement judgement;
  std::vector<Span> hits;
  for (const std::string &cue : cues) {
    for (size_t pos : FindWord(text, cue)) hits.push_back({pos, pos + cue.size()});
  }
  if (hits.empty()) return judgement;
  judgement.attempt = true;
  std::sort(hits.begin(), hits.end(), [](const Span &a, const Span &b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
  });
  // Drop cues nested in a longer one starting at the same place.
  std::vector<Span> cue_spans;
  for (const Span &h : hits) {
    if (!cue_spans.empty() && h.begin < cue_spans.back().end) continue;
    cue_spans.push_back(h);
  }

  const Lexicon &lexicon = db.lexicon();
  auto polarities = [&](std::string_view clause) {
    std::pair<bool, bool> pos_neg{false, false};
    for (const RealizedSlot &r : ExtractForMr(db, mr, clause)) {
      if (IsHeadAttribute(r.attribute)) continue;
      const Slot *slot = mr.Find(r.attribute);
      if (!slot || !SameValue(slot->value, r.value)) continue;
      Polarity p = PolarityOrNeutral(*slot, lexicon);
      if (p == Polarity::kPos) pos_neg.first = true;
      if (p == Polarity::kNeg) pos_neg.second = true;
    }
    return pos_neg;
  };

  std::vector<Span> sentences = SentenceSpans(text);
  for (size_t c = 0; c < cue_spans.size(); ++c) {
    const Span &cue = cue_spans[c];
    size_t s = 0;
    while (s + 1 < sentences.size() && sentences[s].end <= cue.begin) ++s;
    const Span &sentence = sentences[s];
    size_t left_begin = sentence.begin;
    size_t right_end = sentence.end;
    for (const Span &other : cue_spans) {
      if (other.end <= cue.begin && other.begin >= sentence.begin) {
        left_begin = std::max(left_begin, other.end);
      }
      if (other.begin >= cue.end && other.begin < sentence.end) {
        right_end = std::min(right_end, other.begin);
      }
    }
    std::string_view left = text.substr(left_begin, cue.begin - left_begin);
    if (!HasWord(left) && s > 0) {
      left = text.substr(sentences[s - 1].begin,
                         sentences[s - 1].end - sentences[s - 1].begin);
    }
    std::string_view right = text.substr(cue.end, right_end - cue.end);
    auto [lpos, lneg] = polarities(left);
    auto [rpos, rneg] = polarities(right);
    if ((lpos && rneg) || (lneg && rpos)) {
      judgement.correct = true;
      break;
    }
  }
  return judgement;
}

ContrastMetrics ComputeContrastMetrics(const std::vector<ContrastRow> &rows,
                                       const std::vector<std::string> &cues,
                                       const PatternDb &db) {
  ContrastMetrics m;
  m.rows = rows.size();
  for (const ContrastRow &row : rows) {
    ContrastJudgement j = JudgeContrast(row.mr, row.text, cues, db);
    if (j.attempt) ++m.attempts;
    if (j.correct) ++m.correct;
  }
  if (m.attempts) {
    m.correct_fraction = static_cast<double>(m.correct) / static_cast<double>(m.attempts);
  }
  return m;
}

ComplexityLabel RealizedComplexity(const MeaningRepresentation &mr,
                                   std::string_view text, const PatternDb &db) {
  size_t slots = 0;
  for (const RealizedSlot &r : ExtractForMr(db, mr, text)) {
    if (r.attribute != "name") ++slots;
  }
  return ComplexityForCounts(slots, static_cast<size_t>(CountSentences(text)));
}

double ComputeComplexityAccuracy(const std::vector<ComplexityRow> &rows,
                                 const PatternDb &db) {
  if (rows.empty()) return 0;
  size_t hits = 0;
  for (const ComplexityRow &row : rows) {
    if (RealizedComplexity(row.mr, row.text, db) == row.expected) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

RowScore ScoreRow(const EvalRow &row, const PatternDb &db,
                  const EvalOptions &options) {
  RowScore score;
  score.slots = SlotErrorRate(row.mr, row.text, db);
  score.sentences = CountSentences(row.text);
  if (row.period) score.period_ok = score.sentences == *row.period;
  if (row.distribute) {
    score.distrib_ok = DistributionCorrect(*row.distribute, row.text, db.lexicon());
  }
  score.contrast = JudgeContrast(row.mr, row.text, options.cues, db);
  if (row.complexity) {
    size_t slots = 0;
    for (const RealizedSlot &r : score.slots.realized) {
      if (r.attribute != "name") ++slots;
    }
    score.complexity_ok =
        ComplexityForCounts(slots, static_cast<size_t>(score.sentences)) ==
        *row.complexity;
  }
  return score;
}

std::vector<RowScore> ScoreRowsSerial(const std::vector<EvalRow> &rows,
                                      const PatternDb &db,
                                      const EvalOptions &options) {
  std::vector<RowScore> scores;
  scores.reserve(rows.size());
  for (const EvalRow &row : rows) scores.push_back(ScoreRow(row, db, options));
  return scores;
}

std::vector<RowScore> ScoreRowsParallel(const std::vector<EvalRow> &rows,
                                        const PatternDb &db,
                                        const EvalOptions &options,
                                        int workers) {
  std::vector<RowScore> scores(rows.size());
  std::exception_ptr failure;
  const long n = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(1, workers))
  for (long i = 0; i < n; ++i) {
    try {
      scores[static_cast<size_t>(i)] = ScoreRow(rows[static_cast<size_t>(i)], db, options);
    } catch (...) {
#pragma omp critical(sentplan_score_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return scores;
}

EvalReport Summarize(const std::vector<EvalRow> &rows,
                     std::vector<RowScore> scores) {
  EvalReport report;
  report.rows = rows.size();
  double ser_sum = 0;
  size_t period_hits = 0;
  size_t distrib_hits = 0;
  size_t high_hits = 0;
  size_t complexity_hits = 0;
  size_t expected_hits = 0;
  std::vector<double> target;
  std::vector<double> realized;
  for (size_t i = 0; i < rows.size(); ++i) {
    const EvalRow &row = rows[i];
    const RowScore &s = scores[i];
    ser_sum += s.slots.Ser();
    report.substitutions += s.slots.substitutions;
    report.deletions += s.slots.deletions;
    report.insertions += s.slots.insertions;
    report.hallucinations += s.slots.hallucinations;
    if (s.period_ok) {
      ++report.period_rows;
      if (*s.period_ok) ++period_hits;
      target.push_back(*row.period);
      realized.push_back(s.sentences);
    }
    if (s.distrib_ok) {
      ++report.distrib_rows;
      if (*s.distrib_ok) ++distrib_hits;
      if (*row.distribute == DistributeValue::kHigh) {
        ++report.distrib_high_rows;
        if (*s.distrib_ok) ++high_hits;
      }
    }
    if (row.contrast && *row.contrast) {
      ++report.contrast_rows;
      if (s.contrast.correct) ++expected_hits;
    }
    if (s.contrast.attempt) ++report.contrast_attempts;
    if (s.contrast.correct) ++report.contrast_correct;
    if (s.complexity_ok) {
      ++report.complexity_rows;
      if (*s.complexity_ok) ++complexity_hits;
    }
  }
  auto fraction = [](size_t num, size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  if (!rows.empty()) report.ser = ser_sum / static_cast<double>(rows.size());
  report.period_accuracy = fraction(period_hits, report.period_rows);
  report.period_correlation = Pearson(target, realized);
  report.distrib_accuracy = fraction(distrib_hits, report.distrib_rows);
  report.distrib_accuracy_on_high = fraction(high_hits, report.distrib_high_rows);
  report.contrast_correct_fraction =
      fraction(report.contrast_correct, report.contrast_attempts);
  report.contrast_expected_accuracy = fraction(expected_hits, report.contrast_rows);
  report.complexity_accuracy = fraction(complexity_hits, report.complexity_rows);
  report.per_row = std::move(scores);
  return report;
}

EvalReport Evaluate(const std::vector<EvalRow> &rows, const PatternDb &db,
                    const EvalOptions &options, int workers) {
  std::vector<RowScore> scores = workers > 1
                                     ? ScoreRowsParallel(rows, db, options, workers)
                                     : ScoreRowsSerial(rows, db, options);
  return Summarize(rows, std::move(scores));
}

Gates ParseGates(std::string_view text) {
  Gates gates;
  for (std::string_view item : Split(text, ',')) {
    item = Trim(item);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigError, "gate '" + std::string(item) + "' needs key=value");
    }
    std::string key(Trim(item.substr(0, eq)));
    double value = 0;
    try {
      value = std::stod(std::string(Trim(item.substr(eq + 1))));
    } catch (const std::exception &) {
      throw Error(ErrorCode::kConfigError, "gate '" + std::string(item) + "' is not numeric");
    }
    if (key == "ser") gates.max_ser = value;
    else if (key == "period") gates.min_period_accuracy = value;
    else if (key == "distrib") gates.min_distrib_accuracy = value;
    else if (key == "contrast") gates.min_contrast_correct = value;
    else if (key == "complexity") gates.min_complexity_accuracy = value;
    else throw Error(ErrorCode::kConfigError, "unknown gate " + key);
  }
  return gates;
}

std::vector<std::string> CheckGates(const EvalReport &report, const Gates &gates) {
  std::vector<std::string> violations;
  auto below = [&](const char *name, const std::optional<double> &value, double min) {
    if (value && *value < min) {
      violations.push_back(std::string(name) + " " + std::to_string(*value) +
                           " < " + std::to_string(min));
    }
  };
  if (report.rows && report.ser > gates.max_ser) {
    violations.push_back("ser " + std::to_string(report.ser) + " > " +
                         std::to_string(gates.max_ser));
  }
  below("period_accuracy", report.period_accuracy, gates.min_period_accuracy);
  below("distrib_accuracy", report.distrib_accuracy, gates.min_distrib_accuracy);
  below("contrast_correct", report.contrast_correct_fraction, gates.min_contrast_correct);
  below("contrast_expected", report.contrast_expected_accuracy,
        gates.min_contrast_correct);
  below("complexity_accuracy", report.complexity_accuracy,
        gates.min_complexity_accuracy);
  return violations;
}

}  // namespace sentplan
