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

#include "elevsched/verification.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "elevsched/schedulers.h"
#include "elevsched/simulation.h"
#include "elevsched/submodular.h"

namespace elevsched {
namespace {

int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double UniformReal(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<std::pair<int, Direction>> Buttons(const BuildingConfig& b) {
  std::vector<std::pair<int, Direction>> out;
  for (int f = 0; f < b.floors; ++f) {
    for (Direction d : {Direction::kUp, Direction::kDown}) {
      if (b.HallButtonExists(f, d)) out.emplace_back(f, d);
    }
  }
  return out;
}

DoorState RandomDoor(std::mt19937_64& rng, const DoorTiming& doors) {
  switch (UniformInt(rng, 0, 3)) {
    case 1:
      return DoorState::Opening(UniformReal(rng, 0.05, 0.95) * doors.open_time);
    case 2:
      return DoorState::Open(UniformReal(rng, 0.05, 0.95) * doors.dwell_time);
    case 3:
      return DoorState::Closing(UniformReal(rng, 0.05, 0.95) *
                                doors.close_time);
    default:
      return DoorState::Closed();
  }
}

Direction RandomDirection(std::mt19937_64& rng, int floor, int floors) {
  std::vector<Direction> options{Direction::kIdle};
  if (floor < floors - 1) options.push_back(Direction::kUp);
  if (floor > 0) options.push_back(Direction::kDown);
  return options[UniformInt(rng, 0, static_cast<int>(options.size()) - 1)];
}

CarSnapshot RandomCar(std::mt19937_64& rng, const BuildingConfig& b, int index,
                      bool allow_moving) {
  CarSnapshot car;
  car.car_index = index;
  car.capacity = b.car_capacity;
  const double h = b.floor_height;
  const int kind = UniformInt(rng, 0, allow_moving ? 2 : 1);
  int floor = UniformInt(rng, 0, b.floors - 1);
  if (kind == 2) {
    // Between two floors, moving with a speed it can still stop from
    // inside the shaft.
    const int lower = UniformInt(rng, 0, b.floors - 2);
    const double pos = (lower + UniformReal(rng, 0.05, 0.95)) * h;
    const Direction d =
        UniformInt(rng, 0, 1) ? Direction::kUp : Direction::kDown;
    const double room = d == Direction::kUp ? (b.floors - 1) * h - pos : pos;
    double v = UniformReal(rng, 0.1, b.motion.rated_speed);
    while (StoppingDistance(v, b.motion) > room) v *= 0.5;
    car.kinematic.position = pos;
    car.kinematic.velocity = Sign(d) * v;
    car.committed_direction = d;
    floor = lower;
  } else {
    car.kinematic.position = floor * h;
    if (kind == 1) car.kinematic.door = RandomDoor(rng, b.doors);
    car.committed_direction = RandomDirection(rng, floor, b.floors);
  }
  // Car calls lie ahead in the committed direction, as they do for
  // passengers who boarded through a hall button.
  const int first = kind == 2 ? car.FirstStoppableFloor(b) : floor;
  std::vector<int> ahead;
  for (int f = 0; f < b.floors; ++f) {
    if (f == first && kind != 2) continue;
    if ((car.committed_direction == Direction::kUp && f >= first) ||
        (car.committed_direction == Direction::kDown && f <= first)) {
      ahead.push_back(f);
    }
  }
  if (!ahead.empty() && UniformInt(rng, 0, 9) >= 4) {
    std::shuffle(ahead.begin(), ahead.end(), rng);
    ahead.resize(std::min<size_t>(ahead.size(), UniformInt(rng, 1, 3)));
    std::sort(ahead.begin(), ahead.end());
    car.car_calls = ahead;
  }
  const int min_load = static_cast<int>(car.car_calls.size());
  car.load = UniformInt(rng, 0, 9) == 0
                 ? UniformInt(rng, min_load, b.car_capacity)
                 : std::min(b.car_capacity, min_load + UniformInt(rng, 0, 2));
  return car;
}

double Elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

SystemState RandomSystemState(std::mt19937_64& rng, const StateLimits& limits) {
  SystemState s;
  s.building.floors = UniformInt(rng, 2, std::max(2, limits.max_floors));
  s.building.cars = UniformInt(rng, 1, std::max(1, limits.max_cars));
  s.building.population = 10 * s.building.floors;
  std::vector<std::pair<int, Direction>> buttons = Buttons(s.building);
  std::shuffle(buttons.begin(), buttons.end(), rng);
  const int n = UniformInt(
      rng, 1,
      std::min<int>(limits.max_calls, static_cast<int>(buttons.size())));
  for (int i = 0; i < n; ++i) {
    HallCall call;
    call.id = i;
    call.floor = buttons[i].first;
    call.direction = buttons[i].second;
    call.press_time = -UniformReal(rng, 0.0, 60.0);
    s.calls.push_back(call);
  }
  for (int c = 0; c < s.building.cars; ++c) {
    s.cars.push_back(RandomCar(rng, s.building, c, limits.moving_cars));
    // A moving car may hold a lock on the hall call at its next stop.
    CarSnapshot& car = s.cars.back();
    if (car.kinematic.velocity != 0.0 && UniformInt(rng, 0, 2) == 0) {
      const int f = car.FirstStoppableFloor(s.building);
      const Direction d = car.committed_direction;
      bool free = s.building.HallButtonExists(f, d);
      for (const HallCall& call : s.calls) {
        free = free && !(call.floor == f && call.direction == d);
      }
      for (const CarSnapshot& other : s.cars) {
        for (const StopRequest& r : other.locked_stops) {
          free = free && !(r.floor == f && r.dir == d);
        }
      }
      if (free) car.locked_stops.push_back({f, d, -10.0, 1000 + c});
    }
  }
  return s;
}

PropertyReport CheckSubmodularitySuite(int instances, int trials,
                                       std::uint64_t seed, double tolerance) {
  const auto start = std::chrono::steady_clock::now();
  PropertyReport report;
  report.name = "submodularity";
  std::mt19937_64 rng(seed);
  for (int k = 0; k < instances; ++k) {
    const SystemState s = RandomSystemState(rng, {});
    WeightConfig config;
    if (k % 2 == 1) config.higher_order = {{3, 2.0}, {4, 5.0}};
    const WeightSet w = BuildWeights(
        s.cars, s.calls, DestinationDistribution::Uniform(s.building.floors),
        s.building, config);
    const Objective objective(w);
    const SubmodularityReport r =
        CheckSubmodular(objective, trials, rng(), tolerance);
    report.cases += r.trials;
    report.violations += r.violations;
    report.worst = std::max(report.worst, r.max_violation);
  }
  report.seconds = Elapsed(start);
  return report;
}

PropertyReport CheckMonotoneChains(int chains, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  PropertyReport report;
  report.name = "monotone";
  std::mt19937_64 rng(seed);
  for (int k = 0; k < chains; ++k) {
    const SystemState s = RandomSystemState(rng, {});
    const WeightSet w = BuildWeights(
        s.cars, s.calls, DestinationDistribution::Uniform(s.building.floors),
        s.building, WeightConfig{});
    const Objective objective(w);
    const int n = w.num_calls;
    const int cars = w.num_cars;
    AssignmentSet a(n, cars);
    ++report.cases;
    if (objective.F(a) != 0.0) {
      ++report.violations;
      report.worst = std::max(report.worst, std::abs(objective.F(a)));
      report.detail = "f(empty) != 0";
    }
    std::vector<GroundElement> order;
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < cars; ++c) order.push_back({i, c});
    }
    std::shuffle(order.begin(), order.end(), rng);
    double prev = 0.0;
    for (const GroundElement& e : order) {
      a.Insert(e);
      const double cur = objective.F(a);
      ++report.cases;
      if (cur < prev - 1e-9) {
        ++report.violations;
        report.worst = std::max(report.worst, prev - cur);
      }
      prev = cur;
    }
  }
  report.seconds = Elapsed(start);
  return report;
}

PropertyReport CheckGreedyBound(int instances, std::uint64_t seed,
                                PropertyReport* basis) {
  const auto start = std::chrono::steady_clock::now();
  PropertyReport report;
  report.name = "greedy-half-bound";
  PropertyReport feasible;
  feasible.name = "greedy-basis";
  std::mt19937_64 rng(seed);
  StateLimits limits;
  limits.max_cars = 3;
  limits.max_calls = 6;
  for (int k = 0; k < instances; ++k) {
    const SystemState s = RandomSystemState(rng, limits);
    const WeightSet w = BuildWeights(
        s.cars, s.calls, DestinationDistribution::Uniform(s.building.floors),
        s.building, WeightConfig{});
    const Objective objective(w);
    const PartitionMatroid matroid(w.num_calls, w.num_cars);
    const AssignmentSet greedy = GreedyMaximize(objective, matroid);
    const AssignmentSet opt = BruteForceOptimal(objective, matroid);
    const double psum = objective.PenaltySum();
    const double lhs = objective.H(greedy) + psum;
    const double rhs = 0.5 * (objective.H(opt) + psum);
    ++report.cases;
    const double slack = 1e-9 * std::max(1.0, std::abs(rhs));
    if (lhs < rhs - slack) {
      ++report.violations;
      report.worst = std::max(report.worst, rhs - lhs);
    }
    ++feasible.cases;
    if (!matroid.IsBasis(greedy)) ++feasible.violations;
  }
  report.seconds = Elapsed(start);
  feasible.seconds = report.seconds;
  if (basis != nullptr) *basis = feasible;
  return report;
}

PropertyReport CheckExactness(int scenarios, std::uint64_t seed,
                              double tolerance) {
  const auto start = std::chrono::steady_clock::now();
  PropertyReport report;
  report.name = "exactness";
  std::mt19937_64 rng(seed);
  for (int k = 0; k < scenarios; ++k) {
    BuildingConfig b;
    b.floors = UniformInt(rng, 3, 12);
    b.cars = UniformInt(rng, 1, 4);
    b.population = 10 * b.floors;
    std::vector<InitialCar> init(b.cars);
    std::vector<CarSnapshot> snaps(b.cars);
    for (int c = 0; c < b.cars; ++c) {
      InitialCar& ic = init[c];
      ic.floor = UniformInt(rng, 0, b.floors - 1);
      ic.door = RandomDoor(rng, b.doors);
      ic.direction = RandomDirection(rng, ic.floor, b.floors);
      std::vector<int> ahead;
      for (int f = 0; f < b.floors; ++f) {
        if (ic.direction != Direction::kIdle &&
            Toward(ic.floor, f) == ic.direction) {
          ahead.push_back(f);
        }
      }
      std::shuffle(ahead.begin(), ahead.end(), rng);
      ahead.resize(std::min<size_t>(ahead.size(), UniformInt(rng, 0, 2)));
      std::sort(ahead.begin(), ahead.end());
      ic.onboard_destinations = ahead;
      CarSnapshot& s = snaps[c];
      s.car_index = c;
      s.kinematic.position = b.FloorPosition(ic.floor);
      s.kinematic.door = ic.door;
      s.committed_direction = ic.direction;
      s.car_calls = ic.onboard_destinations;
      s.load = static_cast<int>(ic.onboard_destinations.size());
      s.capacity = b.car_capacity;
    }
    std::vector<std::pair<int, Direction>> buttons = Buttons(b);
    std::shuffle(buttons.begin(), buttons.end(), rng);
    const int n = UniformInt(
        rng, 1, std::min<int>(2 * b.cars, static_cast<int>(buttons.size())));
    std::vector<int> slots;
    for (int c = 0; c < b.cars; ++c) slots.insert(slots.end(), {c, c});
    std::shuffle(slots.begin(), slots.end(), rng);

    DestinationDistribution dist = DestinationDistribution::Uniform(b.floors);
    std::vector<HallCall> calls;
    std::vector<Passenger> traffic;
    FixedScheduler::Table table;
    std::vector<int> car_of(n);
    for (int i = 0; i < n; ++i) {
      const auto [floor, dir] = buttons[i];
      std::vector<int> dests;
      for (int f = 0; f < b.floors; ++f) {
        if (Toward(floor, f) == dir) dests.push_back(f);
      }
      const int dest =
          dests[UniformInt(rng, 0, static_cast<int>(dests.size()) - 1)];
      dist.SetPointMass(floor, dir, dest);
      HallCall call;
      call.id = i;
      call.floor = floor;
      call.direction = dir;
      calls.push_back(call);
      Passenger p;
      p.id = i;
      p.origin = floor;
      p.destination = dest;
      traffic.push_back(p);
      car_of[i] = slots[i];
      table[{floor, Sign(dir)}] = slots[i];
    }

    WeightConfig config;
    config.coincident_bonus = false;
    config.capacity_penalty = false;
    const WeightSet w = BuildWeights(snaps, calls, dist, b, config);
    const double g = Objective(w).G(FromCarVector(car_of, b.cars));

    FixedScheduler scheduler(table);
    SimOptions options;
    options.horizon = 1.0;
    options.initial_cars = init;
    options.destinations = dist;
    const RunStats stats = Run(b, traffic, scheduler, options);
    double total = 0.0;
    for (double wait : stats.waits) total += wait;
    ++report.cases;
    const double err = stats.served == n ? std::abs(g - total)
                                         : std::numeric_limits<double>::max();
    report.worst = std::max(report.worst, err);
    if (err > tolerance) {
      ++report.violations;
      if (report.detail.empty()) {
        std::ostringstream ss;
        ss << "scenario " << k << ": g=" << g << " measured=" << total
           << " served=" << stats.served << "/" << n;
        report.detail = ss.str();
      }
    }
  }
  report.seconds = Elapsed(start);
  return report;
}

PropertyReport CheckPairwiseNonnegative(int states, std::uint64_t seed,
                                        double tolerance) {
  const auto start = std::chrono::steady_clock::now();
  PropertyReport report;
  report.name = "pairwise-nonnegative";
  std::mt19937_64 rng(seed);
  StateLimits limits;
  limits.max_calls = 2;
  int done = 0;
  while (done < states) {
    const SystemState s = RandomSystemState(rng, limits);
    if (s.calls.size() < 2) continue;
    const CarSnapshot& car =
        s.cars[UniformInt(rng, 0, static_cast<int>(s.cars.size()) - 1)];
    const DestinationDistribution dist =
        DestinationDistribution::Uniform(s.building.floors);
    const double joint =
        JointExpectedWaiting(car, s.calls[0], s.calls[1], dist, s.building);
    const double raw = joint - UnaryWeight(car, s.calls[0], s.building) -
                       UnaryWeight(car, s.calls[1], s.building);
    ++report.cases;
    ++done;
    if (raw < -tolerance) {
      ++report.violations;
      report.worst = std::max(report.worst, -raw);
    }
  }
  report.seconds = Elapsed(start);
  return report;
}

}  // namespace elevsched
