#ifndef SENTPLAN_STATS_H_
#define SENTPLAN_STATS_H_

#include <map>
#include <string>
#include <vector>

#include "sentplan/dataset.h"
#include "sentplan/lexicon.h"
#include "sentplan/planner.h"

namespace sentplan {

struct CorpusStats {
  size_t rows = 0;
  size_t unparsed = 0;  // rows whose MR does not parse
  // (slot count, sentence count) -> rows; slot counts include the name.
  std::map<std::pair<int, int>, size_t> attrs_by_period;
  // Distribution value of the priceRange/customerRating pair: the shared
  // adjective when both agree, otherwise none.
  std::map<std::string, size_t> distribute;
  // "price/rating" -> rows, for rows carrying both attributes.
  std::map<std::string, size_t> value_pairs;
  std::map<std::string, size_t> cue_rows;  // rows containing each cue
  std::map<std::string, size_t> complexity;
};

CorpusStats ComputeStats(const std::vector<TextRow> &rows, const Lexicon &lexicon,
                         const std::vector<std::string> &cues);

std::string FormatStatsText(const CorpusStats &stats);
std::string FormatStatsJson(const CorpusStats &stats);

}  // namespace sentplan

#endif  // SENTPLAN_STATS_H_
