#ifndef SENTPLAN_DATASET_H_
#define SENTPLAN_DATASET_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentplan/mr.h"
#include "sentplan/planner.h"

namespace sentplan {

struct RowMeta {
  std::optional<int> period;
  std::optional<DistributeValue> distribute;
  std::optional<bool> contrast;
  std::optional<ComplexityLabel> complexity;

  friend bool operator==(const RowMeta &, const RowMeta &) = default;
};

// A synthesized row. `mr` carries every supervision token the row supports;
// the output mode decides which one is serialized.
struct DatasetRow {
  MeaningRepresentation mr;
  std::string ref;
  RowMeta meta;
};

// A row as read from disk: the MR is kept as text so that rows with
// attributes outside the inventory can still be mined and mixed.
struct TextRow {
  std::string mr;
  std::string ref;
  RowMeta meta;

  friend bool operator==(const TextRow &, const TextRow &) = default;
};

enum class OutputFormat { kCsv, kJsonl };

std::string_view OutputFormatName(OutputFormat format);
std::optional<OutputFormat> ParseOutputFormat(std::string_view text);

// RFC 4180 field quoting.
std::string CsvField(std::string_view field);

// Parses CSV records; quoted fields may hold commas, doubled quotes and
// newlines. Throws MalformedRow on an unterminated quote.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

// CSV with an `mr` column and a text column (ref, output, output_text or
// text; with two columns the second is used). JSONL reads the fields
// mr, ref (or output) and the optional metadata fields. The format is
// chosen by extension (.jsonl or .json -> JSONL).
std::vector<TextRow> ReadRows(const std::filesystem::path &path);
std::vector<TextRow> ParseCsvRows(std::string_view text, std::string_view origin);
std::vector<TextRow> ParseJsonlRows(std::string_view text, std::string_view origin);

// One MR per line; a CSV with an `mr` column is accepted as well.
std::vector<MeaningRepresentation> ReadMrs(const std::filesystem::path &path);

TextRow ToTextRow(const DatasetRow &row, TokenMode mode);

std::string FormatRows(const std::vector<TextRow> &rows, OutputFormat format);

// Writes to a temporary sibling and renames it into place.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view content);

void WriteRows(const std::filesystem::path &path, const std::vector<TextRow> &rows,
               OutputFormat format);

std::string ReadFile(const std::filesystem::path &path);

// Expectations carried by the supervision tokens of an MR line, merged
// under `meta` (explicit metadata wins).
RowMeta MetaFromTokens(const MeaningRepresentation &mr, const RowMeta &meta);

}  // namespace sentplan

#endif  // SENTPLAN_DATASET_H_
