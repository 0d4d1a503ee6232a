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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "elevsched/schedulers.h"
#include "elevsched/simulation.h"
#include "elevsched/traffic.h"

namespace elevsched {
namespace {

// One simulated hour, 12 floors, 4 cars, 30% per five minutes.
void RunHour(benchmark::State& state, const std::string& scheduler) {
  BuildingConfig b;
  b.floors = 12;
  b.cars = 4;
  b.population = 120;
  TrafficSpec spec;
  spec.rate = 30;
  const std::vector<Passenger> traffic = GenerateTraffic(spec, b);
  long served = 0;
  for (auto _ : state) {
    auto s = MakeScheduler(scheduler);
    served += Run(b, traffic, *s).served;
  }
  state.counters["passengers"] = static_cast<double>(traffic.size());
  benchmark::DoNotOptimize(served);
}
BENCHMARK_CAPTURE(RunHour, submodular, std::string("submodular"))
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(RunHour, submodular_lazy, std::string("submodular-lazy"))
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(RunHour, eta, std::string("eta"))
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(RunHour, collective, std::string("collective"))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace elevsched

BENCHMARK_MAIN();
