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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "elevsched/schedulers.h"
#include "json.hpp"

namespace elevsched {
namespace {

using nlohmann::json;

constexpr int kConfigVersion = 1;
constexpr std::string_view kReportSchema = "elevsched-report";
constexpr int kReportVersion = 1;
constexpr std::string_view kCsvHeader =
    "floors,cars,rate,scheduler,awt_mean,awt_std,served";

void CheckKeys(const json& obj, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + " must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
void Read(const json& obj, const char* key, T* out) {
  if (!obj.contains(key)) return;
  try {
    *out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string FormatRate(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", rate);
  return buf;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double SampleStd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::vector<CellKey> Cells(const GridAxes& grid) {
  std::vector<CellKey> out;
  for (int f : grid.floors) {
    for (int c : grid.cars) {
      for (double r : grid.rates) out.push_back({f, c, r});
    }
  }
  return out;
}

}  // namespace

BuildingConfig BuildingTemplate::Make(int floors, int cars) const {
  BuildingConfig b;
  b.floors = floors;
  b.cars = cars;
  b.floor_height = floor_height;
  b.car_capacity = capacity;
  b.motion = motion;
  b.doors = doors;
  b.population = population ? *population : population_per_floor * floors;
  return b;
}

BenchConfig BenchConfig::FromJson(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  CheckKeys(root, "config",
            {"version", "building", "traffic", "grid", "seeds", "schedulers",
             "comparisons", "simulation"});
  BenchConfig c;
  int version = kConfigVersion;
  Read(root, "version", &version);
  if (version != kConfigVersion) {
    throw ConfigError("unsupported config version " + std::to_string(version));
  }
  if (root.contains("building")) {
    const json& b = root["building"];
    CheckKeys(b, "building",
              {"floor_height", "capacity", "population_per_floor", "population",
               "rated_speed", "max_accel", "max_jerk", "door_open",
               "door_dwell", "door_close"});
    Read(b, "floor_height", &c.building.floor_height);
    Read(b, "capacity", &c.building.capacity);
    Read(b, "population_per_floor", &c.building.population_per_floor);
    if (b.contains("population")) {
      int p = 0;
      Read(b, "population", &p);
      c.building.population = p;
    }
    Read(b, "rated_speed", &c.building.motion.rated_speed);
    Read(b, "max_accel", &c.building.motion.max_accel);
    Read(b, "max_jerk", &c.building.motion.max_jerk);
    Read(b, "door_open", &c.building.doors.open_time);
    Read(b, "door_dwell", &c.building.doors.dwell_time);
    Read(b, "door_close", &c.building.doors.close_time);
  }
  if (root.contains("traffic")) {
    const json& t = root["traffic"];
    CheckKeys(t, "traffic", {"pattern", "duration", "mixed", "pinned_dir"});
    std::string pattern(PatternName(c.traffic.pattern));
    Read(t, "pattern", &pattern);
    try {
      c.traffic.pattern = ParsePattern(pattern);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    Read(t, "duration", &c.traffic.duration);
    if (t.contains("mixed")) {
      const json& m = t["mixed"];
      CheckKeys(m, "traffic.mixed", {"up_peak", "down_peak", "interfloor"});
      Read(m, "up_peak", &c.traffic.mixed.up_peak);
      Read(m, "down_peak", &c.traffic.mixed.down_peak);
      Read(m, "interfloor", &c.traffic.mixed.interfloor);
    }
    if (t.contains("pinned_dir")) {
      std::string dir;
      Read(t, "pinned_dir", &dir);
      c.pinned_dir = dir;
    }
  }
  if (root.contains("grid")) {
    const json& g = root["grid"];
    CheckKeys(g, "grid", {"floors", "cars", "rates"});
    Read(g, "floors", &c.grid.floors);
    Read(g, "cars", &c.grid.cars);
    Read(g, "rates", &c.grid.rates);
  }
  Read(root, "seeds", &c.seeds);
  Read(root, "schedulers", &c.schedulers);
  if (root.contains("comparisons")) {
    std::vector<std::vector<std::string>> pairs;
    Read(root, "comparisons", &pairs);
    c.comparisons.clear();
    for (const auto& p : pairs) {
      if (p.size() != 2) {
        throw ConfigError("each comparison must name exactly two schedulers");
      }
      c.comparisons.push_back({p[0], p[1]});
    }
  }
  if (root.contains("simulation")) {
    const json& s = root["simulation"];
    CheckKeys(s, "simulation", {"epoch", "lock_threshold", "drain_limit"});
    Read(s, "epoch", &c.sim.epoch);
    Read(s, "lock_threshold", &c.sim.lock_threshold);
    Read(s, "drain_limit", &c.sim.drain_limit);
  }
  c.Validate();
  return c;
}

BenchConfig BenchConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJson(ss.str());
}

std::string BenchConfig::ToJson() const {
  json b = {{"floor_height", building.floor_height},
            {"capacity", building.capacity},
            {"population_per_floor", building.population_per_floor},
            {"rated_speed", building.motion.rated_speed},
            {"max_accel", building.motion.max_accel},
            {"max_jerk", building.motion.max_jerk},
            {"door_open", building.doors.open_time},
            {"door_dwell", building.doors.dwell_time},
            {"door_close", building.doors.close_time}};
  if (building.population) b["population"] = *building.population;
  json t = {{"pattern", PatternName(traffic.pattern)},
            {"duration", traffic.duration},
            {"mixed",
             {{"up_peak", traffic.mixed.up_peak},
              {"down_peak", traffic.mixed.down_peak},
              {"interfloor", traffic.mixed.interfloor}}}};
  if (pinned_dir) t["pinned_dir"] = *pinned_dir;
  json pairs = json::array();
  for (const Comparison& p : comparisons) pairs.push_back({p.a, p.b});
  json root = {
      {"version", kConfigVersion},
      {"building", b},
      {"traffic", t},
      {"grid",
       {{"floors", grid.floors}, {"cars", grid.cars}, {"rates", grid.rates}}},
      {"seeds", seeds},
      {"schedulers", schedulers},
      {"comparisons", pairs},
      {"simulation",
       {{"epoch", sim.epoch},
        {"lock_threshold", sim.lock_threshold},
        {"drain_limit", sim.drain_limit}}}};
  return root.dump(2);
}

void BenchConfig::Validate() const {
  if (grid.floors.empty() || grid.cars.empty() || grid.rates.empty()) {
    throw ConfigError("grid axes must be nonempty");
  }
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (schedulers.empty()) {
    throw ConfigError("at least one scheduler is required");
  }
  const std::vector<std::string> known = SchedulerSpec::PresetNames();
  for (const std::string& s : schedulers) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw ConfigError("unknown scheduler '" + s + "'");
    }
  }
  if (std::set<std::string>(schedulers.begin(), schedulers.end()).size() !=
      schedulers.size()) {
    throw ConfigError("duplicate scheduler");
  }
  for (const Comparison& p : comparisons) {
    for (const std::string* s : {&p.a, &p.b}) {
      if (std::find(schedulers.begin(), schedulers.end(), *s) ==
          schedulers.end()) {
        throw ConfigError("comparison uses scheduler '" + *s +
                          "' that is not run");
      }
    }
  }
  try {
    for (int f : grid.floors) {
      for (int c : grid.cars) building.Make(f, c).Validate();
    }
    TrafficSpec t = traffic;
    for (double r : grid.rates) {
      t.rate = r;
      t.Validate();
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  if (building.population_per_floor < 0 ||
      (building.population && *building.population <= 0)) {
    throw ConfigError("population must be positive");
  }
  if (!(sim.epoch > 0.0) || sim.lock_threshold < 0.0 || sim.drain_limit < 0.0) {
    throw ConfigError("invalid simulation settings");
  }
}

std::vector<std::uint64_t> ParseSeedList(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  const auto parse = [](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("bad seed '" + s + "'");
    }
    return std::stoull(s);
  };
  while (std::getline(ss, item, ',')) {
    const size_t dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse(item));
      continue;
    }
    const std::uint64_t lo = parse(item.substr(0, dash));
    const std::uint64_t hi = parse(item.substr(dash + 1));
    if (hi < lo || hi - lo > 100000) throw ConfigError("bad seed range");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  }
  if (out.empty()) throw ConfigError("empty seed list");
  return out;
}

std::vector<std::string> ParseSchedulerList(std::string_view text) {
  std::vector<std::string> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  const std::vector<std::string> known = SchedulerSpec::PresetNames();
  while (std::getline(ss, item, ',')) {
    if (std::find(known.begin(), known.end(), item) == known.end()) {
      throw ConfigError("unknown scheduler '" + item + "'");
    }
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError("empty scheduler list");
  return out;
}

double PercentReduction(double awt_a, double awt_b) {
  return 100.0 * (awt_b - awt_a) / awt_b;
}

void Summarize(const std::vector<Comparison>& pairs, Report* report) {
  report->comparisons.clear();
  std::map<std::pair<CellKey, std::string>, const CellResult*> index;
  std::vector<CellKey> keys;
  for (const CellResult& c : report->cells) {
    index[{c.key, c.scheduler}] = &c;
    if (keys.empty() || keys.back() != c.key) keys.push_back(c.key);
  }
  for (const Comparison& pair : pairs) {
    ComparisonResult out;
    out.pair = pair;
    std::map<int, std::pair<double, int>> by_floors;
    double total = 0.0;
    int count = 0;
    for (const CellKey& key : keys) {
      const auto a = index.find({key, pair.a});
      const auto b = index.find({key, pair.b});
      if (a == index.end() || b == index.end()) continue;
      ReductionCell cell;
      cell.key = key;
      cell.valid =
          a->second->valid && b->second->valid && b->second->awt_mean > 0.0;
      if (cell.valid) {
        cell.reduction =
            PercentReduction(a->second->awt_mean, b->second->awt_mean);
        total += cell.reduction;
        ++count;
        by_floors[key.floors].first += cell.reduction;
        ++by_floors[key.floors].second;
      }
      out.cells.push_back(cell);
    }
    out.grand = count > 0 ? total / count : 0.0;
    for (const auto& [f, acc] : by_floors) {
      out.grand_by_floors[f] = acc.first / acc.second;
    }
    report->comparisons.push_back(std::move(out));
  }
}

SimOptions ScenarioOptions(const BenchConfig& config) {
  SimOptions options;
  options.horizon = config.traffic.duration;
  options.epoch = config.sim.epoch;
  options.lock_threshold = config.sim.lock_threshold;
  options.drain_limit = config.sim.drain_limit;
  return options;
}

std::string PinFileName(int floors, double rate, std::uint64_t seed) {
  return "traffic_f" + std::to_string(floors) + "_r" + FormatRate(rate) + "_s" +
         std::to_string(seed) + ".jsonl";
}

std::vector<Passenger> ScenarioTraffic(const BenchConfig& config, int floors,
                                       double rate, std::uint64_t seed) {
  if (config.pinned_dir) {
    const std::filesystem::path path =
        std::filesystem::path(*config.pinned_dir) /
        PinFileName(floors, rate, seed);
    std::ifstream in(path);
    if (in) return ReadTraffic(in);
  }
  TrafficSpec spec = config.traffic;
  spec.rate = rate;
  spec.seed = ScenarioSeed(floors, rate, seed);
  // Traffic depends on floors only; any car count gives the same stream.
  return GenerateTraffic(spec, config.building.Make(floors, 1));
}

Report RunGrid(const BenchConfig& config, int jobs,
               const ProgressFn& progress) {
  config.Validate();
  const std::vector<CellKey> cells = Cells(config.grid);
  const size_t n_seeds = config.seeds.size();
  const size_t n_sched = config.schedulers.size();
  struct Slot {
    RunStats stats;
    bool ok = false;
    std::string error;
  };
  std::vector<Slot> slots(cells.size() * n_seeds * n_sched);
  const long total = static_cast<long>(cells.size() * n_seeds);
  std::atomic<long> next{0};
  std::atomic<long> done{0};
  std::mutex progress_mu;

  const auto worker = [&]() {
    while (true) {
      const long task = next.fetch_add(1);
      if (task >= total) return;
      const CellKey& key = cells[task / n_seeds];
      const std::uint64_t seed = config.seeds[task % n_seeds];
      std::vector<Passenger> traffic;
      std::string traffic_error;
      try {
        traffic = ScenarioTraffic(config, key.floors, key.rate, seed);
      } catch (const std::exception& e) {
        traffic_error = e.what();
      }
      const BuildingConfig building =
          config.building.Make(key.floors, key.cars);
      const SimOptions options = ScenarioOptions(config);
      for (size_t s = 0; s < n_sched; ++s) {
        Slot& slot = slots[static_cast<size_t>(task) * n_sched + s];
        if (!traffic_error.empty()) {
          slot.error = traffic_error;
          continue;
        }
        try {
          const std::unique_ptr<Scheduler> scheduler =
              MakeScheduler(config.schedulers[s]);
          slot.stats = Run(building, traffic, *scheduler, options);
          slot.ok = true;
        } catch (const std::exception& e) {
          slot.error = e.what();
        }
      }
      const long d = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        progress(d, total);
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  Report report;
  for (size_t c = 0; c < cells.size(); ++c) {
    for (size_t s = 0; s < n_sched; ++s) {
      CellResult r;
      r.key = cells[c];
      r.scheduler = config.schedulers[s];
      for (size_t k = 0; k < n_seeds; ++k) {
        const Slot& slot = slots[(c * n_seeds + k) * n_sched + s];
        if (!slot.ok) {
          r.valid = false;
          if (r.error.empty()) r.error = slot.error;
          continue;
        }
        r.awts.push_back(slot.stats.awt);
        r.served += slot.stats.served;
        r.unserved += slot.stats.unserved_at_end;
      }
      if (r.valid) {
        r.awt_mean = Mean(r.awts);
        r.awt_std = SampleStd(r.awts);
      }
      report.cells.push_back(std::move(r));
    }
  }
  Summarize(config.comparisons, &report);
  return report;
}

void WriteCsv(std::ostream& out, const Report& report) {
  out << "# schema=" << kReportSchema << " version=" << kReportVersion << '\n'
      << kCsvHeader << '\n';
  for (const CellResult& c : report.cells) {
    if (!c.valid) continue;
    out << c.key.floors << ',' << c.key.cars << ',' << FormatRate(c.key.rate)
        << ',' << c.scheduler << ',' << FormatDouble(c.awt_mean) << ','
        << FormatDouble(c.awt_std) << ',' << c.served << '\n';
  }
}

std::vector<CellResult> ReadCsv(std::istream& in) {
  std::string line;
  std::vector<CellResult> out;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header");
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::vector<std::string> f;
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 7) throw std::runtime_error("bad CSV row: " + line);
    CellResult c;
    c.key = {std::stoi(f[0]), std::stoi(f[1]), std::stod(f[2])};
    c.scheduler = f[3];
    c.awt_mean = std::stod(f[4]);
    c.awt_std = std::stod(f[5]);
    c.served = std::stol(f[6]);
    out.push_back(c);
  }
  if (!header) throw std::runtime_error("missing CSV header");
  return out;
}

std::string ReportToJson(const Report& report) {
  json cells = json::array();
  for (const CellResult& c : report.cells) {
    json row = {{"floors", c.key.floors}, {"cars", c.key.cars},
                {"rate", c.key.rate},     {"scheduler", c.scheduler},
                {"awts", c.awts},         {"awt_mean", c.awt_mean},
                {"awt_std", c.awt_std},   {"served", c.served},
                {"unserved", c.unserved}, {"valid", c.valid}};
    if (!c.error.empty()) row["error"] = c.error;
    cells.push_back(row);
  }
  json comps = json::array();
  for (const ComparisonResult& r : report.comparisons) {
    json rows = json::array();
    for (const ReductionCell& c : r.cells) {
      rows.push_back({{"floors", c.key.floors},
                      {"cars", c.key.cars},
                      {"rate", c.key.rate},
                      {"reduction", c.reduction},
                      {"valid", c.valid}});
    }
    json by_floors = json::object();
    for (const auto& [f, v] : r.grand_by_floors) {
      by_floors[std::to_string(f)] = v;
    }
    comps.push_back({{"a", r.pair.a},
                     {"b", r.pair.b},
                     {"cells", rows},
                     {"grand_by_floors", by_floors},
                     {"grand", r.grand}});
  }
  json root = {{"schema", kReportSchema},
               {"version", kReportVersion},
               {"cells", cells},
               {"comparisons", comps}};
  return root.dump(2);
}

Report ReportFromJson(std::string_view text) {
  try {
    const json root = json::parse(text);
    if (root.at("schema").get<std::string>() != kReportSchema ||
        root.at("version").get<int>() != kReportVersion) {
      throw std::runtime_error("unsupported report schema");
    }
    Report report;
    for (const json& row : root.at("cells")) {
      CellResult c;
      c.key = {row.at("floors").get<int>(), row.at("cars").get<int>(),
               row.at("rate").get<double>()};
      c.scheduler = row.at("scheduler").get<std::string>();
      c.awts = row.at("awts").get<std::vector<double>>();
      c.awt_mean = row.at("awt_mean").get<double>();
      c.awt_std = row.at("awt_std").get<double>();
      c.served = row.at("served").get<long>();
      c.unserved = row.at("unserved").get<long>();
      c.valid = row.at("valid").get<bool>();
      if (row.contains("error")) c.error = row["error"].get<std::string>();
      report.cells.push_back(std::move(c));
    }
    for (const json& comp : root.at("comparisons")) {
      ComparisonResult r;
      r.pair = {comp.at("a").get<std::string>(),
                comp.at("b").get<std::string>()};
      for (const json& row : comp.at("cells")) {
        ReductionCell c;
        c.key = {row.at("floors").get<int>(), row.at("cars").get<int>(),
                 row.at("rate").get<double>()};
        c.reduction = row.at("reduction").get<double>();
        c.valid = row.at("valid").get<bool>();
        r.cells.push_back(c);
      }
      for (const auto& [f, v] : comp.at("grand_by_floors").items()) {
        r.grand_by_floors[std::stoi(f)] = v.get<double>();
      }
      r.grand = comp.at("grand").get<double>();
      report.comparisons.push_back(std::move(r));
    }
    return report;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
}

std::vector<PlotFile> PlotData(const Report& report) {
  std::vector<PlotFile> out;
  for (const ComparisonResult& r : report.comparisons) {
    std::set<int> floors;
    for (const ReductionCell& c : r.cells) floors.insert(c.key.floors);
    for (int f : floors) {
      std::set<int> cars;
      std::set<double> rates;
      std::map<std::pair<double, int>, const ReductionCell*> at;
      for (const ReductionCell& c : r.cells) {
        if (c.key.floors != f) continue;
        cars.insert(c.key.cars);
        rates.insert(c.key.rate);
        at[{c.key.rate, c.key.cars}] = &c;
      }
      std::ostringstream ss;
      ss << "# schema=elevsched-plot version=1 a=" << r.pair.a
         << " b=" << r.pair.b << " floors=" << f
         << " y=percent_awt_reduction\n";
      ss << "rate";
      for (int c : cars) ss << " cars" << c;
      ss << '\n';
      for (double rate : rates) {
        ss << FormatRate(rate);
        for (int c : cars) {
          const auto it = at.find({rate, c});
          if (it == at.end() || !it->second->valid) {
            ss << " nan";
          } else {
            ss << ' ' << FormatDouble(it->second->reduction);
          }
        }
        ss << '\n';
      }
      out.push_back({"plot_" + r.pair.a + "_vs_" + r.pair.b + "_f" +
                         std::to_string(f) + ".dat",
                     ss.str()});
    }
  }
  return out;
}

void EmitReport(const Report& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + dir.string() + ": " +
                             ec.message());
  }
  const auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(dir / name);
    out << body;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  };
  std::ostringstream csv;
  WriteCsv(csv, report);
  write("report.csv", csv.str());
  write("report.json", ReportToJson(report) + "\n");
  for (const PlotFile& p : PlotData(report)) write(p.name, p.content);
}

}  // namespace elevsched
