#include "sentplan/dataset.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "sentplan/error.h"
#include "sentplan/recipe.h"

namespace sentplan {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / ("sentplan_dataset_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(CsvTest, QuotesWhenNeeded) {
  EXPECT_EQ(CsvField("plain"), "plain");
  EXPECT_EQ(CsvField("a, b"), "\"a, b\"");
  EXPECT_EQ(CsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(CsvField("two\nlines"), "\"two\nlines\"");
}

TEST(CsvTest, ParsesQuotedFields) {
  auto records = ParseCsv("mr,ref\n\"name[a], food[b]\",\"He said \"\"hi\"\",\nthen left.\"\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[1][0], "name[a], food[b]");
  EXPECT_EQ(records[1][1], "He said \"hi\",\nthen left.");
}

TEST(CsvTest, HandlesCrlfAndMissingFinalNewline) {
  auto records = ParseCsv("a,b\r\n1,2");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[1], (std::vector<std::string>{"1", "2"}));
}

TEST(CsvTest, RejectsUnterminatedQuote) {
  try {
    ParseCsv("a,b\n\"open,2\n");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedRow);
  }
}

TEST(CsvTest, RowsNeedMatchingFieldCounts) {
  EXPECT_THROW(ParseCsvRows("mr,ref\nname[a],x,extra\n", "t"), Error);
  EXPECT_THROW(ParseCsvRows("foo,bar,baz\n1,2,3\n", "t"), Error);
  auto rows = ParseCsvRows("mr,output_text,extra\nname[a],hello,1\n", "t");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].ref, "hello");
}

TEST(CsvTest, FormatRoundTrip) {
  std::vector<TextRow> rows = {
      {"name[xname], food[Italian]", "xname serves Italian food, and more.", {}},
      {"name[xname]", "Quote \"this\"\nand that", {}},
  };
  EXPECT_EQ(ParseCsvRows(FormatRows(rows, OutputFormat::kCsv), "t"), rows);
}

TEST(JsonlTest, FormatRoundTripKeepsMetadata) {
  TextRow row{"name[xname], period[2]", "xname is a pub. It is near xnear.", {}};
  row.meta.period = 2;
  row.meta.distribute = DistributeValue::kNone;
  row.meta.contrast = false;
  row.meta.complexity = ComplexityLabel::kLow;
  TextRow bare{"name[xname]", "xname.", {}};
  std::string text = FormatRows({row, bare}, OutputFormat::kJsonl);
  EXPECT_NE(text.find("\"distribute\":\"none\""), std::string::npos);
  EXPECT_NE(text.find("\"period\":null"), std::string::npos);
  EXPECT_EQ(ParseJsonlRows(text, "t"), (std::vector<TextRow>{row, bare}));
}

TEST(JsonlTest, RejectsRowsWithoutMr) {
  EXPECT_THROW(ParseJsonlRows("{\"ref\": \"x\"}\n", "t"), Error);
  EXPECT_THROW(ParseJsonlRows("not json\n", "t"), Error);
}

TEST(FileTest, AtomicWriteAndReadBack) {
  fs::path dir = TempDir("io");
  std::vector<TextRow> rows = {{"name[xname], eatType[pub]", "xname is a pub.", {}}};
  WriteRows(dir / "rows.jsonl", rows, OutputFormat::kJsonl);
  WriteRows(dir / "rows.csv", rows, OutputFormat::kCsv);
  EXPECT_EQ(ReadRows(dir / "rows.jsonl"), rows);
  EXPECT_EQ(ReadRows(dir / "rows.csv"), rows);
  size_t files = 0;
  for (auto &entry : fs::directory_iterator(dir)) {
    ++files;
    EXPECT_EQ(entry.path().string().find(".tmp."), std::string::npos);
  }
  EXPECT_EQ(files, 2u);
  try {
    ReadFile(dir / "missing.csv");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(FileTest, ReadMrsAcceptsLinesAndCsv) {
  fs::path dir = TempDir("mrs");
  WriteFileAtomic(dir / "a.txt", "name[x], food[Italian]\n\nname[y], area[riverside]\n");
  WriteFileAtomic(dir / "b.csv", "mr,ref\n\"name[x], food[Italian]\",x\n");
  EXPECT_EQ(ReadMrs(dir / "a.txt").size(), 2u);
  EXPECT_EQ(ReadMrs(dir / "b.csv").size(), 1u);
}

TEST(MetaTest, TokensFillMissingFields) {
  MeaningRepresentation mr = ParseMr("name[x], period[3], distribute[low], contrast[1]");
  RowMeta explicit_meta;
  explicit_meta.period = 2;
  RowMeta meta = MetaFromTokens(mr, explicit_meta);
  EXPECT_EQ(meta.period, 2);
  EXPECT_EQ(meta.distribute, DistributeValue::kLow);
  EXPECT_EQ(meta.contrast, true);
}

// Scoping cells, rows 3..8 attributes by periods 1..7.
constexpr long kScopingTable[6][7] = {
    {3745, 167, 0, 0, 0, 0, 0},        {5231, 8355, 333, 0, 0, 0, 0},
    {2948, 9510, 7367, 225, 0, 0, 0},  {821, 5002, 7591, 3448, 102, 0, 0},
    {150, 1207, 2983, 2764, 910, 15, 0}, {11, 115, 396, 575, 388, 82, 1},
};

TEST(RecipeTest, BuiltinScopingMatchesTable) {
  DatasetRecipe r = LoadRecipe("scoping");
  EXPECT_EQ(r.kind, RecipeKind::kScoping);
  long total = 0;
  for (const ScopingCell &cell : r.distribution) {
    ASSERT_GE(cell.attrs, 3);
    ASSERT_LE(cell.attrs, 8);
    ASSERT_GE(cell.periods, 1);
    ASSERT_LE(cell.periods, 7);
    EXPECT_EQ(cell.count, kScopingTable[cell.attrs - 3][cell.periods - 1]);
    total += cell.count;
  }
  EXPECT_EQ(r.distribution.size(), 42u);
  EXPECT_EQ(total, 64442);
}

TEST(RecipeTest, BuiltinAggregationCounts) {
  DatasetRecipe r = LoadRecipe("aggregation");
  long train = 0;
  long test = 0;
  for (const auto &c : r.train) train += c.count;
  for (const auto &c : r.test) test += c.count;
  EXPECT_EQ(train, 19107 * 2 + 4246 * 6);
  EXPECT_EQ(test, 288 + 30 + 30 + 60);
  ASSERT_EQ(r.holdouts.size(), 1u);
  EXPECT_EQ(r.holdouts[0], (std::pair<std::string, std::string>{"high", "high"}));
}

TEST(RecipeTest, BuiltinMixtures) {
  std::map<std::string, long> expected = {
      {"3k", 3540}, {"7k", 7040}, {"11k", 11065}, {"21k", 21065}, {"21k_contrast", 21065}};
  for (const auto &[name, rows] : expected) {
    DatasetRecipe r = LoadRecipe(name);
    EXPECT_EQ(r.kind, RecipeKind::kMixture);
    long total = 0;
    for (const MixSource &s : r.sources) total += s.count;
    EXPECT_EQ(total, rows) << name;
  }
  EXPECT_TRUE(LoadRecipe("21k_contrast").stamp_contrast);
  EXPECT_FALSE(LoadRecipe("21k").stamp_contrast);
  EXPECT_EQ(LoadRecipe("contrast_nyc").rows, 3500);
}

TEST(RecipeTest, ValidationErrors) {
  EXPECT_THROW(ParseRecipe("[recipe]\nkind = scoping\nscale = 0\n[distribution]\n3 = 1\n"),
               Error);
  EXPECT_THROW(ParseRecipe("[recipe]\nkind = scoping\nscale = 1.5\n[distribution]\n3 = 1\n"),
               Error);
  EXPECT_THROW(ParseRecipe("[recipe]\nkind = aggregation\n[train]\nhigh/high = 3\n"
                           "[holdout]\npairs = high/high\n"),
               Error);
  EXPECT_THROW(ParseRecipe("[recipe]\nkind = banana\n"), Error);
  EXPECT_THROW(ParseRecipe("[recipe]\nkind = scoping\n[distribution]\n3 = x\n"), Error);
  EXPECT_THROW(ParseRecipe("[recipe]\nkind = mixture\n"), Error);
  EXPECT_THROW(ParseRecipe("[recipe]\nkind = scoping\n[distribution]\n3 = 1\n[extra]\na = 1\n"),
               Error);
  EXPECT_THROW(LoadRecipe("no_such_recipe"), Error);
}

TEST(RecipeTest, ParsesSourcesWithFilters) {
  DatasetRecipe r = ParseRecipe(
      "[recipe]\nname = m\nkind = mixture\ncues = but, yet\n"
      "[source.a]\npath = a.csv\ncount = 5\nfilter = contrast\n"
      "[source.b]\npath = b.csv\ncount = 7\n");
  ASSERT_EQ(r.sources.size(), 2u);
  EXPECT_EQ(r.sources[0].name, "a");
  EXPECT_EQ(r.sources[0].filter, SourceFilter::kContrast);
  EXPECT_EQ(r.sources[1].filter, SourceFilter::kAll);
  EXPECT_EQ(r.cues, (std::vector<std::string>{"but", "yet"}));
}

TEST(RecipeTest, ScaledCountRoundsUp) {
  EXPECT_EQ(ScaledCount(3745, 0.02), 75);
  EXPECT_EQ(ScaledCount(1, 0.02), 1);
  EXPECT_EQ(ScaledCount(0, 0.5), 0);
  EXPECT_EQ(ScaledCount(100, 0.03), 3);
  EXPECT_EQ(ScaledCount(64442, 1.0), 64442);
}

}  // namespace
}  // namespace sentplan
