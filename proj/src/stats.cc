#include "sentplan/stats.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "sentplan/corpus.h"
#include "sentplan/error.h"
#include "sentplan/realizer.h"
#include "sentplan/text.h"

namespace sentplan {

namespace {

size_t NonNameSlots(const MeaningRepresentation &mr) {
  size_t n = 0;
  for (const Slot &slot : mr.Slots()) {
    if (slot.attribute != "name") ++n;
  }
  return n;
}

}  // namespace

CorpusStats ComputeStats(const std::vector<TextRow> &rows, const Lexicon &lexicon,
                         const std::vector<std::string> &cues) {
  CorpusStats stats;
  stats.rows = rows.size();
  for (const std::string &cue : cues) stats.cue_rows[cue] = 0;
  for (const TextRow &row : rows) {
    for (const std::string &cue : cues) {
      if (HasContrastCue(row.ref, {cue})) ++stats.cue_rows[cue];
    }
    MeaningRepresentation mr;
    try {
      mr = ParseMr(row.mr);
    } catch (const Error &) {
      ++stats.unparsed;
      continue;
    }
    int sentences = CountSentences(row.ref);
    ++stats.attrs_by_period[{static_cast<int>(mr.size()), sentences}];
    ComplexityLabel label = ComplexityForCounts(
        NonNameSlots(mr), static_cast<size_t>(std::max(sentences, 1)));
    ++stats.complexity[std::string(ComplexityLabelName(label))];

    const Slot *price = mr.Find("priceRange");
    const Slot *rating = mr.Find("customerRating");
    if (!price || !rating) continue;
    stats.value_pairs[price->value + "/" + rating->value]++;
    auto a = lexicon.Adjective(*price);
    auto b = lexicon.Adjective(*rating);
    std::string key = "none";
    if (a && b && ToLower(*a) == ToLower(*b)) key = ToLower(*a);
    ++stats.distribute[key];
  }
  return stats;
}

std::string FormatStatsText(const CorpusStats &stats) {
  std::ostringstream out;
  out << "rows\t" << stats.rows << "\n";
  if (stats.unparsed) out << "unparsed\t" << stats.unparsed << "\n";
  out << "\n# attrs x periods\n";
  int max_attrs = 0;
  int max_periods = 0;
  for (const auto &[key, n] : stats.attrs_by_period) {
    max_attrs = std::max(max_attrs, key.first);
    max_periods = std::max(max_periods, key.second);
  }
  if (!stats.attrs_by_period.empty()) {
    out << "attrs";
    for (int p = 1; p <= max_periods; ++p) out << "\t" << p;
    out << "\ttotal\n";
    for (int a = 1; a <= max_attrs; ++a) {
      size_t total = 0;
      std::ostringstream line;
      line << a;
      for (int p = 1; p <= max_periods; ++p) {
        auto it = stats.attrs_by_period.find({a, p});
        size_t n = it == stats.attrs_by_period.end() ? 0 : it->second;
        total += n;
        line << "\t" << n;
      }
      auto zero = stats.attrs_by_period.find({a, 0});
      if (zero != stats.attrs_by_period.end()) total += zero->second;
      if (total) out << line.str() << "\t" << total << "\n";
    }
  }
  auto section = [&](const char *title, const std::map<std::string, size_t> &m) {
    out << "\n# " << title << "\n";
    for (const auto &[k, n] : m) out << k << "\t" << n << "\n";
  };
  section("distribute", stats.distribute);
  section("value pairs", stats.value_pairs);
  section("cues", stats.cue_rows);
  section("complexity", stats.complexity);
  return out.str();
}

std::string FormatStatsJson(const CorpusStats &stats) {
  nlohmann::json j;
  j["rows"] = stats.rows;
  j["unparsed"] = stats.unparsed;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto &[key, n] : stats.attrs_by_period) {
    cells.push_back({{"attrs", key.first}, {"periods", key.second}, {"count", n}});
  }
  j["attrs_by_period"] = cells;
  j["distribute"] = stats.distribute;
  j["value_pairs"] = stats.value_pairs;
  j["cues"] = stats.cue_rows;
  j["complexity"] = stats.complexity;
  return j.dump(2) + "\n";
}

}  // namespace sentplan
