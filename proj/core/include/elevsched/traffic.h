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

// Poisson passenger streams.
//
// The arrival intensity is rate% of the building population per five
// minutes. Floor 0 is the lobby.

#ifndef ELEVSCHED_TRAFFIC_H_
#define ELEVSCHED_TRAFFIC_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "elevsched/building.h"
#include "elevsched/simulation.h"

namespace elevsched {

enum class TrafficPattern { kInterfloor, kUpPeak, kDownPeak, kMixed };

std::string_view PatternName(TrafficPattern p);
// Throws std::invalid_argument for an unknown name.
TrafficPattern ParsePattern(std::string_view name);

struct MixedWeights {
  double up_peak = 0.45;
  double down_peak = 0.45;
  double interfloor = 0.10;
};

struct TrafficSpec {
  TrafficPattern pattern = TrafficPattern::kInterfloor;
  double rate = 10.0;  // percent of population per 5 minutes
  double duration = 3600.0;
  std::uint64_t seed = 0;
  MixedWeights mixed;

  // Throws std::domain_error.
  void Validate() const;
};

// Arrivals per second.
double ArrivalIntensity(double rate, int population);

// Strictly increasing arrival times in [0, duration). Throws
// std::domain_error for a zero population or an invalid spec.
std::vector<Passenger> GenerateTraffic(const TrafficSpec& spec,
                                       const BuildingConfig& building);

// Line-delimited pin files: a schema header line, then one passenger per
// line. Doubles are written with enough digits to round-trip exactly.
void WriteTraffic(std::ostream& out, const std::vector<Passenger>& traffic);
// Throws std::runtime_error on a malformed file.
std::vector<Passenger> ReadTraffic(std::istream& in);

// Deterministic seed for one (floors, rate, replicate) scenario instance.
std::uint64_t ScenarioSeed(int floors, double rate, std::uint64_t replicate);

}  // namespace elevsched

#endif  // ELEVSCHED_TRAFFIC_H_
