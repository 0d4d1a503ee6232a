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

// Randomised structural checks of the assignment model.

#ifndef ELEVSCHED_VERIFICATION_H_
#define ELEVSCHED_VERIFICATION_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "elevsched/building.h"
#include "elevsched/waiting_model.h"

namespace elevsched {

struct StateLimits {
  int max_floors = 12;
  int max_cars = 6;
  int max_calls = 8;
  bool moving_cars = true;
};

struct SystemState {
  BuildingConfig building;
  std::vector<CarSnapshot> cars;
  std::vector<HallCall> calls;  // distinct (floor, direction), ids 0..N-1
};

// A random but consistent snapshot: cars at rest (any door phase) or in
// motion between floors, car calls, loads and pending hall calls.
SystemState RandomSystemState(std::mt19937_64& rng, const StateLimits& limits);

struct PropertyReport {
  std::string name;
  long cases = 0;
  long violations = 0;
  double worst = 0.0;  // largest observed error or violation magnitude
  double seconds = 0.0;
  std::string detail;
  bool passed() const { return violations == 0; }
};

// Diminishing returns of f on `instances` weight sets, `trials` each.
PropertyReport CheckSubmodularitySuite(int instances, int trials,
                                       std::uint64_t seed,
                                       double tolerance = 1e-9);

// f(empty) == 0 exactly and f nondecreasing along random chains of E.
PropertyReport CheckMonotoneChains(int chains, std::uint64_t seed);

// Greedy value against brute force on small instances:
// h(greedy) + sum p >= (h(opt) + sum p) / 2. `basis` receives the
// companion check that greedy always returns a complete assignment.
PropertyReport CheckGreedyBound(int instances, std::uint64_t seed,
                                PropertyReport* basis = nullptr);

// Frozen scenarios with point-mass destinations and at most two calls per
// car: g of the applied assignment against total waiting measured by the
// simulator.
PropertyReport CheckExactness(int scenarios, std::uint64_t seed,
                              double tolerance = 1e-6);

// Raw pairwise excess waiting is nonnegative.
PropertyReport CheckPairwiseNonnegative(int states, std::uint64_t seed,
                                        double tolerance = 1e-9);

}  // namespace elevsched

#endif  // ELEVSCHED_VERIFICATION_H_
