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

#include "elevsched/building.h"

#include <stdexcept>

namespace elevsched {

std::string_view DirectionName(Direction d) {
  switch (d) {
    case Direction::kUp:
      return "up";
    case Direction::kDown:
      return "down";
    case Direction::kIdle:
      return "idle";
  }
  return "idle";
}

bool BuildingConfig::HallButtonExists(int floor, Direction d) const {
  if (!IsFloor(floor)) return false;
  if (d == Direction::kUp) return floor < floors - 1;
  if (d == Direction::kDown) return floor > 0;
  return false;
}

void BuildingConfig::Validate() const {
  if (floors < 2) throw std::domain_error("building needs at least 2 floors");
  if (cars < 1) throw std::domain_error("building needs at least 1 car");
  if (car_capacity < 1) throw std::domain_error("car capacity must be >= 1");
  if (!(floor_height > 0.0)) {
    throw std::domain_error("floor height must be positive");
  }
  if (population < 0) throw std::domain_error("population must be >= 0");
  motion.Validate();
  doors.Validate();
}

}  // namespace elevsched
