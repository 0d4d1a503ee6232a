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

// Frozen-world oracle: a fixed set of hall calls, all pressed at t = 0,
// each with one passenger whose destination is known, served by a fixed
// call -> car table inside the full event simulator. No further arrivals.

#ifndef ELEVSCHED_TESTS_ORACLES_FROZEN_WORLD_H_
#define ELEVSCHED_TESTS_ORACLES_FROZEN_WORLD_H_

#include <stdexcept>
#include <vector>

#include "elevsched/building.h"
#include "elevsched/schedulers.h"
#include "elevsched/simulation.h"
#include "elevsched/waiting_model.h"

namespace oracle {

struct FrozenCall {
  int floor = 0;
  elevsched::Direction dir = elevsched::Direction::kUp;
  int destination = 0;
  int car = 0;
};

inline elevsched::CarSnapshot SnapshotOf(const elevsched::InitialCar& car,
                                         const elevsched::BuildingConfig& b,
                                         int index) {
  elevsched::CarSnapshot s;
  s.car_index = index;
  s.kinematic.position = b.FloorPosition(car.floor);
  s.kinematic.door = car.door;
  s.committed_direction = car.direction;
  s.car_calls = car.onboard_destinations;
  s.load = static_cast<int>(car.onboard_destinations.size());
  s.capacity = b.car_capacity;
  return s;
}

inline elevsched::HallCall CallOf(const FrozenCall& c, int id) {
  elevsched::HallCall h;
  h.id = id;
  h.floor = c.floor;
  h.direction = c.dir;
  return h;
}

// Waiting time of each call's passenger, in call order.
inline std::vector<double> SimulateFrozen(
    const elevsched::BuildingConfig& b,
    const std::vector<elevsched::InitialCar>& cars,
    const std::vector<FrozenCall>& calls) {
  elevsched::DestinationDistribution dist =
      elevsched::DestinationDistribution::Uniform(b.floors);
  elevsched::FixedScheduler::Table table;
  std::vector<elevsched::Passenger> traffic;
  for (size_t i = 0; i < calls.size(); ++i) {
    const FrozenCall& c = calls[i];
    dist.SetPointMass(c.floor, c.dir, c.destination);
    table[{c.floor, elevsched::Sign(c.dir)}] = c.car;
    elevsched::Passenger p;
    p.id = static_cast<int>(i);
    p.origin = c.floor;
    p.destination = c.destination;
    traffic.push_back(p);
  }
  elevsched::FixedScheduler scheduler(table);
  elevsched::SimOptions options;
  options.horizon = 1.0;
  options.initial_cars = cars;
  options.destinations = dist;
  std::vector<elevsched::Passenger> out;
  elevsched::Run(b, traffic, scheduler, options, &out);
  std::vector<double> waits(calls.size(), -1.0);
  for (const elevsched::Passenger& p : out) {
    if (!p.board_time) throw std::logic_error("frozen passenger never boarded");
    waits[p.id] = *p.board_time - p.arrival_time;
  }
  return waits;
}

}  // namespace oracle

#endif  // ELEVSCHED_TESTS_ORACLES_FROZEN_WORLD_H_
