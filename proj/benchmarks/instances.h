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

#ifndef ELEVSCHED_BENCHMARKS_INSTANCES_H_
#define ELEVSCHED_BENCHMARKS_INSTANCES_H_

#include <cstdint>
#include <random>

#include "elevsched/verification.h"

namespace elevsched::bench {

// A random state with exactly `calls` hall calls and `cars` cars.
inline SystemState StateWith(int calls, int cars, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StateLimits limits;
  limits.max_floors = 12;
  limits.max_cars = cars;
  limits.max_calls = calls;
  while (true) {
    SystemState s = RandomSystemState(rng, limits);
    if (static_cast<int>(s.calls.size()) == calls &&
        static_cast<int>(s.cars.size()) == cars) {
      return s;
    }
  }
}

}  // namespace elevsched::bench

#endif  // ELEVSCHED_BENCHMARKS_INSTANCES_H_
