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

#include "elevsched/traffic.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace elevsched {
namespace {

constexpr std::string_view kSchema = "elevsched-traffic";
constexpr int kVersion = 1;

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class FloorSampler {
 public:
  FloorSampler(int floors, std::mt19937_64& rng) : floors_(floors), rng_(rng) {}

  // Uniform over ordered pairs of distinct non-lobby floors.
  std::pair<int, int> Interfloor() {
    if (floors_ < 3) {
      throw std::domain_error("inter-floor traffic needs at least 3 floors");
    }
    const int origin = Uniform(1, floors_ - 1);
    int dest = Uniform(1, floors_ - 2);
    if (dest >= origin) ++dest;
    return {origin, dest};
  }
  std::pair<int, int> UpPeak() { return {0, Uniform(1, floors_ - 1)}; }
  std::pair<int, int> DownPeak() { return {Uniform(1, floors_ - 1), 0}; }

 private:
  int Uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  int floors_;
  std::mt19937_64& rng_;
};

}  // namespace

std::string_view PatternName(TrafficPattern p) {
  switch (p) {
    case TrafficPattern::kInterfloor:
      return "interfloor";
    case TrafficPattern::kUpPeak:
      return "up_peak";
    case TrafficPattern::kDownPeak:
      return "down_peak";
    case TrafficPattern::kMixed:
      return "mixed";
  }
  return "unknown";
}

TrafficPattern ParsePattern(std::string_view name) {
  for (TrafficPattern p : {TrafficPattern::kInterfloor, TrafficPattern::kUpPeak,
                           TrafficPattern::kDownPeak, TrafficPattern::kMixed}) {
    if (PatternName(p) == name) return p;
  }
  throw std::invalid_argument("unknown traffic pattern '" + std::string(name) +
                              "'");
}

void TrafficSpec::Validate() const {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::domain_error("traffic rate must be positive");
  }
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::domain_error("traffic duration must be nonnegative");
  }
  if (pattern == TrafficPattern::kMixed) {
    const double sum = mixed.up_peak + mixed.down_peak + mixed.interfloor;
    if (mixed.up_peak < 0.0 || mixed.down_peak < 0.0 ||
        mixed.interfloor < 0.0 || std::abs(sum - 1.0) > 1e-9) {
      throw std::domain_error("mixed traffic weights must sum to 1");
    }
  }
}

double ArrivalIntensity(double rate, int population) {
  return rate / 100.0 * population / 300.0;
}

std::vector<Passenger> GenerateTraffic(const TrafficSpec& spec,
                                       const BuildingConfig& building) {
  spec.Validate();
  building.Validate();
  if (building.population <= 0) {
    throw std::domain_error("building population must be positive");
  }
  std::vector<Passenger> out;
  if (spec.duration == 0.0) return out;
  std::mt19937_64 rng(spec.seed);
  std::exponential_distribution<double> gap(
      ArrivalIntensity(spec.rate, building.population));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FloorSampler floors(building.floors, rng);
  double t = 0.0;
  while (true) {
    double next = t + gap(rng);
    if (!out.empty() && next <= out.back().arrival_time) {
      next = std::nextafter(out.back().arrival_time, spec.duration);
    }
    if (next >= spec.duration) break;
    t = next;
    TrafficPattern pattern = spec.pattern;
    if (pattern == TrafficPattern::kMixed) {
      const double u = unit(rng);
      pattern = u < spec.mixed.up_peak ? TrafficPattern::kUpPeak
                : u < spec.mixed.up_peak + spec.mixed.down_peak
                    ? TrafficPattern::kDownPeak
                    : TrafficPattern::kInterfloor;
    }
    std::pair<int, int> od;
    switch (pattern) {
      case TrafficPattern::kUpPeak:
        od = floors.UpPeak();
        break;
      case TrafficPattern::kDownPeak:
        od = floors.DownPeak();
        break;
      default:
        od = floors.Interfloor();
        break;
    }
    Passenger p;
    p.id = static_cast<int>(out.size());
    p.arrival_time = t;
    p.origin = od.first;
    p.destination = od.second;
    out.push_back(p);
  }
  return out;
}

void WriteTraffic(std::ostream& out, const std::vector<Passenger>& traffic) {
  nlohmann::json header = {{"schema", kSchema},
                           {"version", kVersion},
                           {"fields", {"id", "t", "origin", "destination"}}};
  out << header.dump() << '\n';
  for (const Passenger& p : traffic) {
    nlohmann::json row = {{"id", p.id},
                          {"t", p.arrival_time},
                          {"origin", p.origin},
                          {"destination", p.destination}};
    out << row.dump() << '\n';
  }
}

std::vector<Passenger> ReadTraffic(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("traffic file is empty");
  }
  try {
    const nlohmann::json header = nlohmann::json::parse(line);
    if (header.at("schema").get<std::string>() != kSchema ||
        header.at("version").get<int>() != kVersion) {
      throw std::runtime_error("unsupported traffic schema");
    }
    std::vector<Passenger> out;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const nlohmann::json row = nlohmann::json::parse(line);
      Passenger p;
      p.id = row.at("id").get<int>();
      p.arrival_time = row.at("t").get<double>();
      p.origin = row.at("origin").get<int>();
      p.destination = row.at("destination").get<int>();
      out.push_back(p);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed traffic file: ") +
                             e.what());
  }
}

std::uint64_t ScenarioSeed(int floors, double rate, std::uint64_t replicate) {
  std::uint64_t h = SplitMix(static_cast<std::uint64_t>(floors));
  h = SplitMix(h ^ static_cast<std::uint64_t>(std::llround(rate * 1000.0)));
  return SplitMix(h ^ replicate);
}

}  // namespace elevsched
