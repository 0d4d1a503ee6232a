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

// Experiment grid: configuration, parallel execution and reports.

#ifndef ELEVSCHED_BENCH_H_
#define ELEVSCHED_BENCH_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "elevsched/building.h"
#include "elevsched/simulation.h"
#include "elevsched/traffic.h"

namespace elevsched {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildingTemplate {
  double floor_height = 3.5;
  int capacity = 12;
  int population_per_floor = 10;
  std::optional<int> population;  // overrides population_per_floor
  MotionLimits motion;
  DoorTiming doors;

  BuildingConfig Make(int floors, int cars) const;
};

struct GridAxes {
  std::vector<int> floors{8, 10, 12};
  std::vector<int> cars{2, 3, 4, 5, 6};
  std::vector<double> rates{10, 15, 20, 25, 30};
};

struct Comparison {
  std::string a;  // reduction of a relative to b
  std::string b;
  bool operator==(const Comparison&) const = default;
};

struct SimSettings {
  double epoch = 1.0;
  double lock_threshold = 3.0;
  double drain_limit = 4 * 3600.0;
};

struct BenchConfig {
  BuildingTemplate building;
  TrafficSpec traffic;  // rate and seed are taken from the grid
  std::optional<std::string> pinned_dir;
  GridAxes grid;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<std::string> schedulers{"submodular", "unary-only", "eta",
                                      "collective"};
  std::vector<Comparison> comparisons{{"submodular", "unary-only"},
                                      {"submodular", "eta"},
                                      {"submodular", "collective"}};
  SimSettings sim;

  // Strict: unknown keys, wrong types and unknown scheduler names throw
  // ConfigError.
  static BenchConfig FromJson(std::string_view text);
  static BenchConfig Load(const std::filesystem::path& path);
  std::string ToJson() const;
  void Validate() const;
};

// Simulator options implied by the config's timing sections.
SimOptions ScenarioOptions(const BenchConfig& config);

// "0,1,5-9" -> {0, 1, 5, 6, 7, 8, 9}. Throws ConfigError.
std::vector<std::uint64_t> ParseSeedList(std::string_view text);
// Comma-separated names. Throws ConfigError for unknown schedulers.
std::vector<std::string> ParseSchedulerList(std::string_view text);

struct CellKey {
  int floors = 0;
  int cars = 0;
  double rate = 0.0;
  auto operator<=>(const CellKey&) const = default;
};

struct CellResult {
  CellKey key;
  std::string scheduler;
  std::vector<double> awts;  // one per seed, in seed order
  double awt_mean = 0.0;
  double awt_std = 0.0;  // sample standard deviation across seeds
  long served = 0;
  long unserved = 0;
  bool valid = true;
  std::string error;
  bool operator==(const CellResult&) const = default;
};

struct ReductionCell {
  CellKey key;
  double reduction = 0.0;  // 100 (awt_b - awt_a) / awt_b
  bool valid = true;
  bool operator==(const ReductionCell&) const = default;
};

struct ComparisonResult {
  Comparison pair;
  std::vector<ReductionCell> cells;
  std::map<int, double> grand_by_floors;  // mean of valid cell reductions
  double grand = 0.0;
  bool operator==(const ComparisonResult&) const = default;
};

struct Report {
  std::vector<CellResult> cells;  // ordered by (cell, scheduler order)
  std::vector<ComparisonResult> comparisons;
  bool operator==(const Report&) const = default;
};

double PercentReduction(double awt_a, double awt_b);

// Fills comparisons from cells.
void Summarize(const std::vector<Comparison>& pairs, Report* report);

using ProgressFn = std::function<void(long done, long total)>;

// Runs every (cell, seed) on `jobs` threads. All schedulers in a cell and
// seed see the identical passenger list. Per-cell failures mark the cell
// invalid and do not abort the grid.
Report RunGrid(const BenchConfig& config, int jobs = 1,
               const ProgressFn& progress = nullptr);

// Passenger list for one (floors, rate, seed) instance: read from the pin
// directory when present, generated otherwise.
std::vector<Passenger> ScenarioTraffic(const BenchConfig& config, int floors,
                                       double rate, std::uint64_t seed);
std::string PinFileName(int floors, double rate, std::uint64_t seed);

void WriteCsv(std::ostream& out, const Report& report);
std::vector<CellResult> ReadCsv(std::istream& in);
std::string ReportToJson(const Report& report);
Report ReportFromJson(std::string_view text);

struct PlotFile {
  std::string name;
  std::string content;
};
// One file per comparison and floor count: x = rate, one series per car
// count.
std::vector<PlotFile> PlotData(const Report& report);

// Writes report.csv, report.json and plot files into `dir`, creating it.
// Throws std::runtime_error when a file cannot be written.
void EmitReport(const Report& report, const std::filesystem::path& dir);

}  // namespace elevsched

#endif  // ELEVSCHED_BENCH_H_
