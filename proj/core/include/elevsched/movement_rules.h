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

// Collective service order. Both the waiting-time estimator and the
// simulator ask this one function where a car goes next, so the estimate
// and the simulated world follow the same rules.
//
// A loaded car keeps its committed direction and stops at the nearest car
// call or same-direction hall call ahead of it. An empty car:
//   1. keeps its direction if there are same-direction hall calls ahead;
//   2. otherwise heads for the highest down call (when going up) or the
//      lowest up call (when going down);
//   3. otherwise heads for the lowest up call (going up) or the highest down
//      call (going down).
// An idle car first turns toward its nearest call (earliest press wins
// ties) and then applies the rules above.

#ifndef ELEVSCHED_MOVEMENT_RULES_H_
#define ELEVSCHED_MOVEMENT_RULES_H_

#include <optional>
#include <span>

#include "elevsched/building.h"

namespace elevsched {

// A hall call as seen by the car it is assigned to.
struct StopRequest {
  int floor = 0;
  Direction dir = Direction::kUp;
  double press_time = 0.0;
  int id = 0;
};

struct Stop {
  int floor = 0;
  // Hall direction boarded at this stop; kIdle for a car-call-only stop.
  Direction serve = Direction::kIdle;
};

struct RuleInput {
  // Current floor for a car at rest; the first floor the car can still stop
  // at for a moving car.
  int floor = 0;
  Direction direction = Direction::kIdle;
  std::span<const int> car_calls;
  std::span<const StopRequest> hall_calls;
  // A full car ignores hall calls.
  bool full = false;
};

std::optional<Stop> NextStop(const RuleInput& in);

// Hall direction boarded by a car whose doors have just opened at
// `in.floor`, after passengers for that floor have alighted; nullopt when
// nobody boards here.
std::optional<Direction> BoardingDirection(const RuleInput& in);

// Direction the car commits to when leaving `from` for `stop`.
Direction DepartureDirection(int from, const Stop& stop);

}  // namespace elevsched

#endif  // ELEVSCHED_MOVEMENT_RULES_H_
