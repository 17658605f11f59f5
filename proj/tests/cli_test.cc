#include "sentplan/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "sentplan/dataset.h"

namespace sentplan {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sentplan");
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path TempDir(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / ("sentplan_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(CliTest, GenerateIsReproducible) {
  fs::path a = TempDir("gen_a");
  fs::path b = TempDir("gen_b");
  CliRun ra = Cli({"generate", "--recipe", "scoping", "--scale", "0.02", "--seed", "7",
                "--out", a.string()});
  ASSERT_EQ(ra.code, 0) << ra.err;
  CliRun rb = Cli({"generate", "--recipe", "scoping", "--scale", "0.02", "--seed", "7",
                "--out", b.string(), "--workers", "3"});
  ASSERT_EQ(rb.code, 0) << rb.err;
  for (const char *file : {"scoping.train.no_supervision.csv", "scoping.train.period.csv"}) {
    ASSERT_TRUE(fs::exists(a / file)) << file;
    EXPECT_EQ(ReadFile(a / file), ReadFile(b / file));
  }
  EXPECT_EQ(ReadRows(a / "scoping.train.period.csv").size(), 1303u);
}

TEST(CliTest, SeedIsMandatory) {
  CliRun r = Cli({"generate", "--recipe", "scoping", "--out", TempDir("noseed").string()});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("--seed"), std::string::npos);
}

TEST(CliTest, BadArgumentsAreErrors) {
  EXPECT_EQ(Cli({"generate", "--recipe", "scoping", "--seed", "1", "--scale", "1.5"}).code,
            kExitError);
  EXPECT_EQ(Cli({"generate", "--recipe", "nope", "--seed", "1"}).code, kExitError);
  EXPECT_EQ(Cli({"stats", "--in", "x.csv", "--format", "xml"}).code, kExitError);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitError);
  EXPECT_EQ(Cli({"evaluate", "--in", "/nonexistent/rows.csv"}).code, kExitError);
}

TEST(CliTest, EvaluatePerfectAndCorruptedCorpora) {
  fs::path dir = TempDir("eval");
  ASSERT_EQ(Cli({"generate", "--recipe", "aggregation", "--scale", "0.01", "--seed", "3",
                 "--out", dir.string(), "--format", "jsonl"})
                .code,
            0);
  fs::path test = dir / "aggregation.test.distribute_semantic.jsonl";
  CliRun ok = Cli({"evaluate", "--in", test.string(), "--out", (dir / "report.jsonl").string()});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_NE(ok.out.find("0.0000"), std::string::npos);
  std::string report = ReadFile(dir / "report.jsonl");
  EXPECT_NE(report.find("\"summary\""), std::string::npos);

  std::vector<TextRow> rows = ReadRows(test);
  rows[0].ref = "xname is a pub.";
  WriteRows(dir / "bad.jsonl", rows, OutputFormat::kJsonl);
  CliRun bad = Cli({"evaluate", "--in", (dir / "bad.jsonl").string()});
  EXPECT_EQ(bad.code, kExitGate);
  EXPECT_NE(bad.err.find("gate"), std::string::npos);
  CliRun lenient = Cli({"evaluate", "--in", (dir / "bad.jsonl").string(), "--gates",
                     "ser=1,distrib=0,period=0,complexity=0"});
  EXPECT_EQ(lenient.code, kExitOk) << lenient.err;
}

TEST(CliTest, MineMixAndStats) {
  fs::path dir = TempDir("mix");
  std::vector<TextRow> e2e;
  for (int i = 0; i < 120; ++i) {
    std::string mr = "name[r" + std::to_string(i) + "], eatType[pub]";
    e2e.push_back({mr, i % 3 == 0 ? "A pub, but dear." : "A pub.", {}});
  }
  WriteRows(dir / "e2e.csv", e2e, OutputFormat::kCsv);
  CliRun mine = Cli({"mine", "--in", (dir / "e2e.csv").string(), "--out",
                  (dir / "mined.csv").string()});
  ASSERT_EQ(mine.code, 0) << mine.err;
  EXPECT_EQ(ReadRows(dir / "mined.csv").size(), 40u);

  ASSERT_EQ(Cli({"generate", "--recipe", "contrast_nyc", "--scale", "0.02", "--seed", "2",
                 "--out", dir.string()})
                .code,
            0);
  fs::path recipe = dir / "small.ini";
  WriteFileAtomic(recipe,
                  "[recipe]\nname = small\nkind = mixture\nstamp_contrast = true\n"
                  "[source.nyc]\npath = contrast_nyc.train.no_supervision.csv\ncount = 70\n"
                  "[source.e2e_contrast]\npath = e2e.csv\ncount = 40\nfilter = contrast\n"
                  "[source.e2e_random]\npath = e2e.csv\ncount = 50\nfilter = noncontrast\n");
  fs::path out = dir / "small.jsonl";
  CliRun mix = Cli({"mix", "--recipe", recipe.string(), "--seed", "1", "--out", out.string(),
                 "--format", "jsonl"});
  ASSERT_EQ(mix.code, 0) << mix.err;
  std::vector<TextRow> mixed = ReadRows(out);
  EXPECT_EQ(mixed.size(), 160u);
  std::string first = ReadFile(out);
  ASSERT_EQ(Cli({"mix", "--recipe", recipe.string(), "--seed", "1", "--out", out.string(),
                 "--format", "jsonl"})
                .code,
            0);
  EXPECT_EQ(ReadFile(out), first);

  CliRun missing = Cli({"mix", "--recipe", recipe.string(), "--seed", "1", "--in",
                     "e2e_random=" + (dir / "absent.csv").string()});
  EXPECT_EQ(missing.code, kExitError);

  CliRun stats = Cli({"stats", "--in", out.string(), "--format", "jsonl"});
  ASSERT_EQ(stats.code, 0) << stats.err;
  EXPECT_NE(stats.out.find("\"cues\""), std::string::npos);
}

TEST(CliTest, StatsOnEmptyFile) {
  fs::path dir = TempDir("empty");
  WriteFileAtomic(dir / "empty.csv", "");
  CliRun r = Cli({"stats", "--in", (dir / "empty.csv").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rows\t0"), std::string::npos);
}

TEST(CliTest, ExpandWritesPeriodRows) {
  fs::path dir = TempDir("expand");
  WriteFileAtomic(dir / "mrs.txt",
                  "name[x], eatType[pub], food[Italian]\nname[y], area[riverside], near[z], "
                  "familyFriendly[no]\n");
  CliRun r = Cli({"expand", "--in", (dir / "mrs.txt").string(), "--seed", "5", "--out",
               (dir / "out.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadRows(dir / "out.csv").size(), 2u + 3u);
}

}  // namespace
}  // namespace sentplan
