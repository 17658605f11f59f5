#include "sentplan/dataset.h"

#include <unistd.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sentplan/error.h"
#include "sentplan/text.h"

namespace sentplan {

namespace {

using nlohmann::json;

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json MetaValue(const std::optional<int> &v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string_view OutputFormatName(OutputFormat format) {
  return format == OutputFormat::kCsv ? "csv" : "jsonl";
}

std::optional<OutputFormat> ParseOutputFormat(std::string_view text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "jsonl") return OutputFormat::kJsonl;
  return std::nullopt;
}

std::string CsvField(std::string_view field) {
  bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos ||
               (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  size_t line = 1;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) {
          throw Error(ErrorCode::kMalformedRow,
                      "line " + std::to_string(line) + ": stray quote");
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kMalformedRow, "unterminated quoted field");
  }
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

std::vector<TextRow> ParseCsvRows(std::string_view text, std::string_view origin) {
  auto records = ParseCsv(text);
  std::vector<TextRow> rows;
  if (records.empty()) return rows;
  const auto &header = records.front();
  int mr_col = -1;
  int text_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    std::string name = ToLower(Trim(header[i]));
    if (name == "mr") mr_col = static_cast<int>(i);
    if (name == "ref" || name == "output" || name == "output_text" ||
        name == "text") {
      if (text_col < 0) text_col = static_cast<int>(i);
    }
  }
  if (text_col < 0 && header.size() == 2 && mr_col == 0) text_col = 1;
  if (mr_col < 0 || text_col < 0) {
    throw Error(ErrorCode::kMalformedRow,
                std::string(origin) + ": header needs 'mr' and 'ref' columns");
  }
  for (size_t r = 1; r < records.size(); ++r) {
    const auto &record = records[r];
    if (record.size() != header.size()) {
      throw Error(ErrorCode::kMalformedRow,
                  std::string(origin) + ": record " + std::to_string(r) + " has " +
                      std::to_string(record.size()) + " fields, header has " +
                      std::to_string(header.size()));
    }
    rows.push_back({record[static_cast<size_t>(mr_col)],
                    record[static_cast<size_t>(text_col)], {}});
  }
  return rows;
}

std::vector<TextRow> ParseJsonlRows(std::string_view text, std::string_view origin) {
  std::vector<TextRow> rows;
  size_t line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto where = [&] { return std::string(origin) + ":" + std::to_string(line_no); };
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("mr") ||
        !j["mr"].is_string()) {
      throw Error(ErrorCode::kMalformedRow, where() + ": want an object with 'mr'");
    }
    TextRow row;
    row.mr = j["mr"].get<std::string>();
    for (const char *key : {"ref", "output", "output_text", "text"}) {
      if (j.contains(key) && j[key].is_string()) {
        row.ref = j[key].get<std::string>();
        break;
      }
    }
    if (j.contains("period") && j["period"].is_number_integer()) {
      row.meta.period = j["period"].get<int>();
    }
    if (j.contains("distribute") && j["distribute"].is_string()) {
      row.meta.distribute = ParseDistributeValue(j["distribute"].get<std::string>());
    }
    if (j.contains("contrast") && j["contrast"].is_boolean()) {
      row.meta.contrast = j["contrast"].get<bool>();
    }
    if (j.contains("complexity") && j["complexity"].is_string()) {
      row.meta.complexity = ParseComplexityLabel(j["complexity"].get<std::string>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<TextRow> ReadRows(const std::filesystem::path &path) {
  std::string text = ReadFile(path);
  std::string name = path.string();
  if (EndsWith(name, ".jsonl") || EndsWith(name, ".json")) {
    return ParseJsonlRows(text, name);
  }
  return ParseCsvRows(text, name);
}

std::vector<MeaningRepresentation> ReadMrs(const std::filesystem::path &path) {
  std::string text = ReadFile(path);
  std::vector<MeaningRepresentation> mrs;
  std::string_view first = Trim(Split(text, '\n').front());
  if (ToLower(first).rfind("mr", 0) == 0 && first.find('[') == std::string_view::npos) {
    auto records = ParseCsv(text);
    for (size_t r = 1; r < records.size(); ++r) {
      if (records[r].empty()) continue;
      mrs.push_back(ParseMr(records[r][0]));
    }
    return mrs;
  }
  for (std::string_view line : Split(text, '\n')) {
    if (Trim(line).empty()) continue;
    mrs.push_back(ParseMr(line));
  }
  return mrs;
}

TextRow ToTextRow(const DatasetRow &row, TokenMode mode) {
  return {SerializeMr(row.mr, mode), row.ref, row.meta};
}

std::string FormatRows(const std::vector<TextRow> &rows, OutputFormat format) {
  std::string out;
  if (format == OutputFormat::kCsv) {
    out = "mr,ref\n";
    for (const TextRow &row : rows) {
      out += CsvField(row.mr);
      out += ',';
      out += CsvField(row.ref);
      out += '\n';
    }
    return out;
  }
  for (const TextRow &row : rows) {
    json j;
    j["mr"] = row.mr;
    j["ref"] = row.ref;
    j["period"] = MetaValue(row.meta.period);
    j["distribute"] = row.meta.distribute
                          ? json(std::string(DistributeValueName(*row.meta.distribute)))
                          : json(nullptr);
    j["contrast"] = row.meta.contrast ? json(*row.meta.contrast) : json(nullptr);
    j["complexity"] =
        row.meta.complexity
            ? json(std::string(ComplexityLabelName(*row.meta.complexity)))
            : json(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

void WriteFileAtomic(const std::filesystem::path &path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::kIoError, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot rename into " + path.string());
  }
}

void WriteRows(const std::filesystem::path &path, const std::vector<TextRow> &rows,
               OutputFormat format) {
  WriteFileAtomic(path, FormatRows(rows, format));
}

RowMeta MetaFromTokens(const MeaningRepresentation &mr, const RowMeta &meta) {
  RowMeta out = meta;
  if (!out.period) {
    if (const SupervisionToken *t = mr.Token(SupervisionKind::kPeriod)) {
      out.period = t->number;
    }
  }
  if (!out.distribute) {
    if (const SupervisionToken *t = mr.Token(SupervisionKind::kDistributeSemantic)) {
      out.distribute = t->distribute;
    }
  }
  if (!out.contrast) {
    if (const SupervisionToken *t = mr.Token(SupervisionKind::kContrastBinary)) {
      out.contrast = t->number == 1;
    }
  }
  return out;
}

}  // namespace sentplan
