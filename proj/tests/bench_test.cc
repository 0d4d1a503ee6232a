// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "elevsched/bench.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "elevsched/schedulers.h"
#include "gtest/gtest.h"

namespace elevsched {
namespace {

namespace fs = std::filesystem;

BenchConfig Tiny() {
  BenchConfig c;
  c.grid.floors = {6};
  c.grid.cars = {2};
  c.grid.rates = {20};
  c.seeds = {0, 1};
  c.schedulers = {"submodular", "eta"};
  c.comparisons = {{"submodular", "eta"}};
  c.traffic.duration = 300;
  return c;
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("elevsched_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Config, DefaultsValidate) { EXPECT_NO_THROW(BenchConfig{}.Validate()); }

TEST(Config, JsonRoundTrip) {
  BenchConfig c = Tiny();
  c.building.population = 55;
  c.traffic.pattern = TrafficPattern::kMixed;
  c.sim.lock_threshold = 4.5;
  c.pinned_dir = "pins";
  const BenchConfig back = BenchConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson(), c.ToJson());
  EXPECT_EQ(back.grid.floors, c.grid.floors);
  EXPECT_EQ(back.seeds, c.seeds);
  EXPECT_EQ(back.comparisons, c.comparisons);
  EXPECT_EQ(back.building.population, 55);
  EXPECT_EQ(back.traffic.pattern, TrafficPattern::kMixed);
  EXPECT_EQ(back.sim.lock_threshold, 4.5);
  EXPECT_EQ(back.pinned_dir, "pins");
}

TEST(Config, EmptyObjectGivesDefaults) {
  const BenchConfig c = BenchConfig::FromJson("{}");
  EXPECT_EQ(c.ToJson(), BenchConfig{}.ToJson());
}

TEST(Config, StrictParsing) {
  EXPECT_THROW(BenchConfig::FromJson("{"), ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"colour": 1})"), ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"building": {"floors": 3}})"),
               ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"seeds": "0"})"), ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"version": 2})"), ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"schedulers": ["magic"]})"),
               ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"schedulers": ["eta", "eta"]})"),
               ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(
                   R"({"schedulers": ["eta"], "comparisons": [["eta"]]})"),
               ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"schedulers": ["eta"],
                  "comparisons": [["eta", "collective"]]})"),
               ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"traffic": {"pattern": "lunch"}})"),
               ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"grid": {"floors": []}})"),
               ConfigError);
  EXPECT_THROW(BenchConfig::FromJson(R"({"building": {"capacity": 0}})"),
               ConfigError);
}

TEST(Config, LoadMissingFileThrows) {
  EXPECT_THROW(BenchConfig::Load("/nonexistent/grid.json"), ConfigError);
}

TEST(Config, TemplateMakesBuilding) {
  BuildingTemplate t;
  const BuildingConfig b = t.Make(12, 4);
  EXPECT_EQ(b.floors, 12);
  EXPECT_EQ(b.cars, 4);
  EXPECT_EQ(b.population, 120);
  t.population = 33;
  EXPECT_EQ(t.Make(12, 4).population, 33);
}

TEST(Config, ScenarioOptionsFollowSettings) {
  BenchConfig c = Tiny();
  c.sim.epoch = 0.5;
  c.sim.lock_threshold = 2.0;
  const SimOptions o = ScenarioOptions(c);
  EXPECT_EQ(o.horizon, 300.0);
  EXPECT_EQ(o.epoch, 0.5);
  EXPECT_EQ(o.lock_threshold, 2.0);
}

TEST(Lists, Seeds) {
  EXPECT_EQ(ParseSeedList("3"), (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(ParseSeedList("0-3,7"),
            (std::vector<std::uint64_t>{0, 1, 2, 3, 7}));
  EXPECT_THROW(ParseSeedList(""), ConfigError);
  EXPECT_THROW(ParseSeedList("a"), ConfigError);
  EXPECT_THROW(ParseSeedList("5-2"), ConfigError);
  EXPECT_THROW(ParseSeedList("-1"), ConfigError);
}

TEST(Lists, Schedulers) {
  EXPECT_EQ(ParseSchedulerList("eta,collective"),
            (std::vector<std::string>{"eta", "collective"}));
  EXPECT_THROW(ParseSchedulerList("eta,nope"), ConfigError);
  EXPECT_THROW(ParseSchedulerList(""), ConfigError);
}

TEST(Reduction, Formula) {
  EXPECT_DOUBLE_EQ(PercentReduction(9.0, 10.0), 10.0);
  EXPECT_DOUBLE_EQ(PercentReduction(12.0, 10.0), -20.0);
}

CellResult Cell(int floors, int cars, double rate, const std::string& s,
                double awt, bool valid = true) {
  CellResult c;
  c.key = {floors, cars, rate};
  c.scheduler = s;
  c.awts = {awt};
  c.awt_mean = awt;
  c.valid = valid;
  return c;
}

TEST(Summarize, GrandAverageIsMeanOfCellReductions) {
  Report r;
  r.cells = {Cell(8, 2, 10, "a", 9),         Cell(8, 2, 10, "b", 10),
             Cell(8, 3, 10, "a", 8),         Cell(8, 3, 10, "b", 10),
             Cell(10, 2, 10, "a", 10),       Cell(10, 2, 10, "b", 10),
             Cell(10, 3, 10, "a", 1, false), Cell(10, 3, 10, "b", 10)};
  Summarize({{"a", "b"}}, &r);
  ASSERT_EQ(r.comparisons.size(), 1u);
  const ComparisonResult& c = r.comparisons[0];
  ASSERT_EQ(c.cells.size(), 4u);
  EXPECT_FALSE(c.cells[3].valid);
  EXPECT_NEAR(c.grand, (10.0 + 20.0 + 0.0) / 3.0, 1e-12);
  EXPECT_NEAR(c.grand_by_floors.at(8), 15.0, 1e-12);
  EXPECT_NEAR(c.grand_by_floors.at(10), 0.0, 1e-12);
}

TEST(RunGrid, OneCellGivesOneReductionEntry) {
  const Report r = RunGrid(Tiny());
  ASSERT_EQ(r.cells.size(), 2u);
  ASSERT_EQ(r.comparisons.size(), 1u);
  ASSERT_EQ(r.comparisons[0].cells.size(), 1u);
  EXPECT_TRUE(r.comparisons[0].cells[0].valid);
  for (const CellResult& c : r.cells) {
    EXPECT_TRUE(c.valid) << c.error;
    EXPECT_EQ(c.awts.size(), 2u);
    EXPECT_GT(c.served, 0);
  }
}

TEST(RunGrid, EverySchedulerSeesTheSameTraffic) {
  const BenchConfig config = Tiny();
  const Report r = RunGrid(config);
  for (const CellResult& c : r.cells) {
    for (size_t k = 0; k < config.seeds.size(); ++k) {
      const std::vector<Passenger> t =
          ScenarioTraffic(config, 6, 20, config.seeds[k]);
      auto s = MakeScheduler(c.scheduler);
      const RunStats direct = elevsched::Run(config.building.Make(6, 2), t, *s,
                                             ScenarioOptions(config));
      EXPECT_EQ(direct.awt, c.awts[k]) << c.scheduler;
    }
  }
}

TEST(RunGrid, TrafficIndependentOfCarCount) {
  BenchConfig config = Tiny();
  const std::vector<Passenger> a = ScenarioTraffic(config, 10, 15, 3);
  config.grid.cars = {5};
  const std::vector<Passenger> b = ScenarioTraffic(config, 10, 15, 3);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].arrival_time, b[i].arrival_time);
  }
}

TEST(RunGrid, JobCountDoesNotChangeResults) {
  BenchConfig config = Tiny();
  config.grid.cars = {2, 3};
  config.seeds = {0, 1, 2};
  const Report one = RunGrid(config, 1);
  const Report three = RunGrid(config, 3);
  EXPECT_EQ(one, three);
  std::ostringstream a, b;
  WriteCsv(a, one);
  WriteCsv(b, three);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunGrid, ProgressReachesTotal) {
  long last = 0;
  long total = 0;
  RunGrid(Tiny(), 1, [&](long d, long t) {
    EXPECT_EQ(d, last + 1);
    last = d;
    total = t;
  });
  EXPECT_EQ(last, 2);
  EXPECT_EQ(total, 2);
}

TEST(RunGrid, BrokenScenarioMarksCellInvalidWithoutAborting) {
  const fs::path dir = TempDir("broken_pins");
  {
    std::ofstream out(dir / PinFileName(6, 20, 1));
    out << "not json\n";
  }
  BenchConfig config = Tiny();
  config.pinned_dir = dir.string();
  config.grid.rates = {20, 25};
  const Report r = RunGrid(config);
  ASSERT_EQ(r.cells.size(), 4u);
  int invalid = 0;
  for (const CellResult& c : r.cells) {
    if (c.key.rate == 20) {
      EXPECT_FALSE(c.valid);
      EXPECT_FALSE(c.error.empty());
      ++invalid;
    } else {
      EXPECT_TRUE(c.valid);
    }
  }
  EXPECT_EQ(invalid, 2);
  EXPECT_FALSE(r.comparisons[0].cells[0].valid);
  EXPECT_TRUE(r.comparisons[0].cells[1].valid);
  std::ostringstream csv;
  WriteCsv(csv, r);
  std::istringstream in(csv.str());
  EXPECT_EQ(ReadCsv(in).size(), 2u);
  fs::remove_all(dir);
}

TEST(RunGrid, PinnedTrafficIsUsedWhenPresent) {
  const fs::path dir = TempDir("pins");
  BenchConfig config = Tiny();
  std::vector<Passenger> pinned = ScenarioTraffic(config, 6, 20, 0);
  pinned.resize(3);
  {
    std::ofstream out(dir / PinFileName(6, 20, 0));
    WriteTraffic(out, pinned);
  }
  config.pinned_dir = dir.string();
  EXPECT_EQ(ScenarioTraffic(config, 6, 20, 0).size(), 3u);
  EXPECT_GT(ScenarioTraffic(config, 6, 20, 1).size(), 3u);
  fs::remove_all(dir);
}

TEST(PinFileName, Format) {
  EXPECT_EQ(PinFileName(8, 12.5, 3), "traffic_f8_r12.5_s3.jsonl");
  EXPECT_EQ(PinFileName(10, 20, 0), "traffic_f10_r20_s0.jsonl");
}

TEST(Csv, EmptyReportIsHeaderOnly) {
  std::ostringstream out;
  WriteCsv(out, Report{});
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 2);
  std::istringstream again(out.str());
  EXPECT_TRUE(ReadCsv(again).empty());
}

TEST(Csv, RoundTripKeepsValuesBitExact) {
  Report r;
  r.cells = {Cell(8, 2, 12.5, "eta", 1.0 / 3.0),
             Cell(8, 2, 12.5, "submodular", std::sqrt(2.0))};
  r.cells[0].awt_std = 0.1;
  r.cells[1].served = 77;
  std::ostringstream out;
  WriteCsv(out, r);
  std::istringstream in(out.str());
  const std::vector<CellResult> back = ReadCsv(in);
  ASSERT_EQ(back.size(), 2u);
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].key, r.cells[i].key);
    EXPECT_EQ(back[i].scheduler, r.cells[i].scheduler);
    EXPECT_EQ(back[i].awt_mean, r.cells[i].awt_mean);
    EXPECT_EQ(back[i].awt_std, r.cells[i].awt_std);
    EXPECT_EQ(back[i].served, r.cells[i].served);
  }
  std::istringstream bad("floors,cars\n");
  EXPECT_THROW(ReadCsv(bad), std::runtime_error);
}

TEST(Json, RoundTripIsExact) {
  BenchConfig config = Tiny();
  config.grid.cars = {2, 3};
  Report r = RunGrid(config);
  r.cells[1].valid = false;
  r.cells[1].error = "boom";
  Summarize(config.comparisons, &r);
  EXPECT_EQ(ReportFromJson(ReportToJson(r)), r);
  EXPECT_THROW(ReportFromJson("{}"), std::runtime_error);
  EXPECT_THROW(ReportFromJson(R"({"schema":"x","version":1})"),
               std::runtime_error);
}

TEST(Plot, OneFilePerFloorCountOneSeriesPerCarCount) {
  Report r;
  for (int f : {8, 10}) {
    for (int c : {2, 3, 4}) {
      for (double rate : {10.0, 20.0}) {
        r.cells.push_back(Cell(f, c, rate, "a", 9));
        r.cells.push_back(Cell(f, c, rate, "b", 10));
      }
    }
  }
  Summarize({{"a", "b"}}, &r);
  const std::vector<PlotFile> plots = PlotData(r);
  ASSERT_EQ(plots.size(), 2u);
  EXPECT_EQ(plots[0].name, "plot_a_vs_b_f8.dat");
  std::istringstream in(plots[0].content);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# schema=elevsched-plot", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "rate cars2 cars3 cars4");
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string tok;
    int cols = 0;
    while (row >> tok) ++cols;
    EXPECT_EQ(cols, 4);
    ++rows;
  }
  EXPECT_EQ(rows, 2);
}

TEST(Emit, WritesAllFiles) {
  const fs::path dir = TempDir("emit");
  BenchConfig config = Tiny();
  const Report r = RunGrid(config);
  EmitReport(r, dir / "out");
  EXPECT_TRUE(fs::exists(dir / "out" / "report.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "report.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "plot_submodular_vs_eta_f6.dat"));
  std::ifstream in(dir / "out" / "report.json");
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(ReportFromJson(buf.str()), r);
  fs::remove_all(dir);
}

TEST(Emit, UnwritablePathThrows) {
  const fs::path dir = TempDir("blocked");
  {
    std::ofstream(dir / "file") << "x";
  }
  EXPECT_THROW(EmitReport(Report{}, dir / "file" / "sub"), std::runtime_error);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace elevsched
