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

#ifndef ELEVSCHED_BUILDING_H_
#define ELEVSCHED_BUILDING_H_

#include <cstdint>
#include <string_view>

#include "elevsched/kinematics.h"

namespace elevsched {

// Floors are 0-based; floor 0 is the lobby.
enum class Direction : std::int8_t { kDown = -1, kIdle = 0, kUp = 1 };

inline int Sign(Direction d) { return static_cast<int>(d); }
inline Direction Opposite(Direction d) {
  return static_cast<Direction>(-static_cast<int>(d));
}
std::string_view DirectionName(Direction d);
// Direction of travel from `from` to `to`; kIdle when equal.
inline Direction Toward(int from, int to) {
  return to > from ? Direction::kUp
                   : (to < from ? Direction::kDown : Direction::kIdle);
}

struct BuildingConfig {
  int floors = 8;
  double floor_height = 3.5;
  int cars = 3;
  int car_capacity = 12;
  MotionLimits motion;
  DoorTiming doors;
  int population = 80;

  double FloorPosition(int floor) const { return floor * floor_height; }
  bool IsFloor(int floor) const { return floor >= 0 && floor < floors; }
  // Hall buttons: no "up" on the top floor and no "down" at the lobby.
  bool HallButtonExists(int floor, Direction d) const;
  // Upper bound on simultaneously active hall calls.
  int MaxHallCalls() const { return 2 * floors - 2; }

  // Throws std::domain_error on an invalid configuration.
  void Validate() const;
};

}  // namespace elevsched

#endif  // ELEVSCHED_BUILDING_H_
