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

// elevsched: grid runs, single simulations, property checks and traffic
// pinning.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "elevsched/bench.h"
#include "elevsched/schedulers.h"
#include "elevsched/simulation.h"
#include "elevsched/traffic.h"
#include "elevsched/verification.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using elevsched::BenchConfig;

struct CommonFlags {
  std::string config;
  std::string out;
  std::string seeds;
  std::string schedulers;
  int jobs = 0;
};

BenchConfig LoadConfig(const CommonFlags& flags) {
  BenchConfig config =
      flags.config.empty() ? BenchConfig{} : BenchConfig::Load(flags.config);
  if (!flags.seeds.empty())
    config.seeds = elevsched::ParseSeedList(flags.seeds);
  if (!flags.schedulers.empty()) {
    config.schedulers = elevsched::ParseSchedulerList(flags.schedulers);
    // Keep only comparisons whose schedulers are still present.
    std::vector<elevsched::Comparison> kept;
    for (const auto& c : config.comparisons) {
      const auto has = [&](const std::string& n) {
        return std::find(config.schedulers.begin(), config.schedulers.end(),
                         n) != config.schedulers.end();
      };
      if (has(c.a) && has(c.b)) kept.push_back(c);
    }
    config.comparisons = kept;
  }
  config.Validate();
  return config;
}

int Jobs(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create directory " + dir.string());
  }
}

int RunCommand(const CommonFlags& flags) {
  const BenchConfig config = LoadConfig(flags);
  const fs::path out =
      flags.out.empty() ? fs::path("results") : fs::path(flags.out);
  const elevsched::Report report =
      elevsched::RunGrid(config, Jobs(flags.jobs), [](long done, long total) {
        std::cerr << "\r" << done << "/" << total << std::flush;
        if (done == total) std::cerr << "\n";
      });
  elevsched::EmitReport(report, out);
  int invalid = 0;
  for (const auto& cell : report.cells) {
    if (cell.valid) continue;
    ++invalid;
    std::cerr << "invalid cell f=" << cell.key.floors << " c=" << cell.key.cars
              << " r=" << cell.key.rate << " " << cell.scheduler << ": "
              << cell.error << "\n";
  }
  std::cout << std::fixed << std::setprecision(2);
  for (const auto& cmp : report.comparisons) {
    std::cout << cmp.pair.a << " vs " << cmp.pair.b << ":";
    for (const auto& [floors, value] : cmp.grand_by_floors) {
      std::cout << " f" << floors << "=" << value << "%";
    }
    std::cout << " all=" << cmp.grand << "%\n";
  }
  std::cout << "report written to " << out.string() << "\n";
  if (invalid > 0) std::cerr << invalid << " invalid cells\n";
  return 0;
}

struct SimulateFlags {
  std::optional<int> floors;
  std::optional<int> cars;
  std::optional<double> rate;
  bool trace = false;
};

int SimulateCommand(const CommonFlags& flags, const SimulateFlags& sim) {
  const BenchConfig config = LoadConfig(flags);
  const int floors = sim.floors.value_or(config.grid.floors.front());
  const int cars = sim.cars.value_or(config.grid.cars.front());
  const double rate = sim.rate.value_or(config.grid.rates.front());
  const std::uint64_t seed = config.seeds.front();
  const elevsched::BuildingConfig building = config.building.Make(floors, cars);
  building.Validate();
  const std::vector<elevsched::Passenger> traffic =
      elevsched::ScenarioTraffic(config, floors, rate, seed);
  const fs::path out = flags.out.empty() ? fs::path(".") : fs::path(flags.out);
  if (sim.trace) MakeDir(out);

  for (const std::string& name : config.schedulers) {
    const std::unique_ptr<elevsched::Scheduler> scheduler =
        elevsched::MakeScheduler(name);
    elevsched::SimOptions options = elevsched::ScenarioOptions(config);
    std::ofstream trace_file;
    if (sim.trace) {
      const fs::path path = out / ("trace_" + name + ".jsonl");
      trace_file.open(path);
      if (!trace_file)
        throw std::runtime_error("cannot write " + path.string());
      elevsched::WriteTraceHeader(trace_file);
      options.trace = [&trace_file](const elevsched::TraceRecord& r) {
        elevsched::WriteTraceRecord(trace_file, r);
      };
    }
    const elevsched::RunStats stats =
        elevsched::Run(building, traffic, *scheduler, options);
    nlohmann::json line = {
        {"scheduler", name},      {"floors", floors},
        {"cars", cars},           {"rate", rate},
        {"seed", seed},           {"generated", stats.generated},
        {"served", stats.served}, {"unserved", stats.unserved_at_end},
        {"awt", stats.awt},       {"att", stats.att},
        {"epochs", stats.epochs}, {"reassignments", stats.reassignments}};
    std::cout << line.dump() << "\n";
  }
  return 0;
}

int VerifyCommand(const CommonFlags& flags) {
  const std::uint64_t seed =
      flags.seeds.empty() ? 0 : elevsched::ParseSeedList(flags.seeds).front();
  std::vector<elevsched::PropertyReport> reports;
  reports.push_back(elevsched::CheckSubmodularitySuite(1000, 200, seed + 1));
  reports.push_back(elevsched::CheckMonotoneChains(1000, seed + 2));
  elevsched::PropertyReport basis;
  reports.push_back(elevsched::CheckGreedyBound(200, seed + 3, &basis));
  reports.push_back(basis);
  reports.push_back(elevsched::CheckExactness(100, seed + 4));
  reports.push_back(elevsched::CheckPairwiseNonnegative(10000, seed + 5));

  nlohmann::json all = nlohmann::json::array();
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name
              << " cases=" << r.cases << " violations=" << r.violations
              << " worst=" << r.worst << " time=" << r.seconds << "s";
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    all.push_back({{"name", r.name},
                   {"cases", r.cases},
                   {"violations", r.violations},
                   {"worst", r.worst},
                   {"seconds", r.seconds},
                   {"passed", r.passed()}});
  }
  if (!flags.out.empty()) {
    MakeDir(flags.out);
    const fs::path path = fs::path(flags.out) / "verify.json";
    std::ofstream f(path);
    if (!(f << nlohmann::json{{"schema", "elevsched-verify"},
                              {"version", 1},
                              {"checks", all}}
                   .dump(2)
            << "\n")) {
      throw std::runtime_error("cannot write " + path.string());
    }
  }
  return ok ? 0 : 1;
}

int GenTrafficCommand(const CommonFlags& flags) {
  if (flags.out.empty()) throw CLI::ValidationError("--out", "required");
  BenchConfig config = LoadConfig(flags);
  config.pinned_dir.reset();  // always generate fresh
  MakeDir(flags.out);
  int written = 0;
  for (int floors : config.grid.floors) {
    for (double rate : config.grid.rates) {
      for (std::uint64_t seed : config.seeds) {
        const fs::path path =
            fs::path(flags.out) / elevsched::PinFileName(floors, rate, seed);
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        elevsched::WriteTraffic(
            f, elevsched::ScenarioTraffic(config, floors, rate, seed));
        if (!f) throw std::runtime_error("cannot write " + path.string());
        ++written;
      }
    }
  }
  std::cout << written << " traffic files written to " << flags.out << "\n";
  return 0;
}

void AddCommon(CLI::App* app, CommonFlags* flags) {
  app->add_option("--config", flags->config, "Experiment config (JSON)");
  app->add_option("--out", flags->out, "Output directory");
  app->add_option("--seeds", flags->seeds, "Seed list, e.g. 0-9 or 1,3,5");
  app->add_option("--schedulers", flags->schedulers,
                  "Comma-separated scheduler names");
  app->add_option("--jobs", flags->jobs, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elevator group scheduling experiments"};
  app.require_subcommand(1);

  CommonFlags run_flags, sim_flags, verify_flags, gen_flags;
  SimulateFlags sim_extra;
  CLI::App* run = app.add_subcommand("run", "Run the experiment grid");
  AddCommon(run, &run_flags);
  CLI::App* simulate = app.add_subcommand("simulate", "Simulate one scenario");
  AddCommon(simulate, &sim_flags);
  simulate->add_option("--floors", sim_extra.floors, "Floor count");
  simulate->add_option("--cars", sim_extra.cars, "Car count");
  simulate->add_option("--rate", sim_extra.rate,
                       "Arrival rate, percent of population per 5 min");
  simulate->add_flag("--trace", sim_extra.trace,
                     "Write an event trace per scheduler into --out");
  CLI::App* verify = app.add_subcommand("verify", "Run the property suite");
  AddCommon(verify, &verify_flags);
  CLI::App* gen =
      app.add_subcommand("gen-traffic", "Write pinned traffic files");
  AddCommon(gen, &gen_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return RunCommand(run_flags);
    if (simulate->parsed()) return SimulateCommand(sim_flags, sim_extra);
    if (verify->parsed()) return VerifyCommand(verify_flags);
    if (gen->parsed()) return GenTrafficCommand(gen_flags);
  } catch (const elevsched::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
