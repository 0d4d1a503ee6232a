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

#include "elevsched/waiting_model.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace elevsched {

namespace {

int FloorAtRest(const CarSnapshot& car, const BuildingConfig& building) {
  const double f = car.kinematic.position / building.floor_height;
  const int floor = static_cast<int>(std::lround(f));
  if (std::abs(f - floor) * building.floor_height > 1e-6 ||
      !building.IsFloor(floor)) {
    throw std::domain_error("car at rest must be level with a floor");
  }
  return floor;
}

void ValidatePickup(const Pickup& p, const BuildingConfig& building) {
  if (!building.IsFloor(p.floor)) {
    throw std::domain_error("pickup floor " + std::to_string(p.floor) +
                            " outside building");
  }
  if (!building.HallButtonExists(p.floor, p.dir)) {
    throw std::domain_error("no hall button in that direction on floor " +
                            std::to_string(p.floor));
  }
  if (p.destination) {
    const int d = *p.destination;
    if (!building.IsFloor(d) || Toward(p.floor, d) != p.dir) {
      throw std::domain_error("pickup destination inconsistent with direction");
    }
  }
}

class FrozenCar {
 public:
  FrozenCar(const CarSnapshot& car, std::span<const Pickup> pickups,
            const BuildingConfig& building)
      : car_(car), building_(building) {
    car_calls_ = car.car_calls;
    for (const StopRequest& s : car.locked_stops) {
      halls_.push_back(s);
      tracked_.push_back(-1);
    }
    for (size_t k = 0; k < pickups.size(); ++k) {
      ValidatePickup(pickups[k], building);
      halls_.push_back({pickups[k].floor, pickups[k].dir, pickups[k].press_time,
                        pickups[k].id});
      tracked_.push_back(static_cast<int>(k));
      destinations_.push_back(pickups[k].destination);
    }
    result_.pickup_times.assign(pickups.size(), 0.0);
    remaining_ = static_cast<int>(pickups.size());
  }

  ServicePlanResult Run() {
    const DoorTiming& doors = building_.doors;
    const CarKinematicState& k = car_.kinematic;
    dir_ = car_.committed_direction;
    if (std::abs(k.velocity) > 1e-12) {
      FirstLegFromMotion();
    } else {
      floor_ = FloorAtRest(car_, building_);
      switch (k.door.phase) {
        case DoorPhase::kClosed:
          break;
        case DoorPhase::kOpening: {
          const double opened = DoorCycleRemaining(doors, k.door) -
                                doors.dwell_time - doors.close_time;
          ArriveWithDoorsOpen(opened);
          t_ = opened + doors.dwell_time + doors.close_time;
          break;
        }
        case DoorPhase::kOpen:
          ArriveWithDoorsOpen(0.0);
          t_ = DoorCycleRemaining(doors, k.door);
          break;
        case DoorPhase::kClosing:
          t_ = DoorCycleRemaining(doors, k.door);
          break;
      }
    }
    int guard = 0;
    const int max_steps =
        8 * (building_.floors + static_cast<int>(halls_.size()) +
             static_cast<int>(car_calls_.size()) + 4);
    while (remaining_ > 0) {
      if (++guard > max_steps) {
        throw std::logic_error("service plan did not converge");
      }
      const std::optional<Stop> stop = Next(floor_);
      if (!stop) throw std::logic_error("pickup unreachable in service plan");
      if (stop->floor == floor_) {
        const double opened = t_ + doors.open_time;
        ArriveWithDoorsOpen(opened);
        t_ = opened + doors.dwell_time + doors.close_time;
      } else {
        dir_ = DepartureDirection(floor_, *stop);
        t_ += TravelTimeRestToRest(
            std::abs(stop->floor - floor_) * building_.floor_height,
            building_.motion);
        floor_ = stop->floor;
      }
    }
    return std::move(result_);
  }

 private:
  std::optional<Stop> Next(int floor) const {
    RuleInput in;
    in.floor = floor;
    in.direction = dir_;
    in.car_calls = car_calls_;
    in.hall_calls = halls_;
    return NextStop(in);
  }

  void FirstLegFromMotion() {
    const CarKinematicState& k = car_.kinematic;
    const double h = building_.floor_height;
    const Direction motion =
        k.velocity > 0.0 ? Direction::kUp : Direction::kDown;
    const int reachable = car_.FirstStoppableFloor(building_);
    dir_ = motion;
    const std::optional<Stop> stop = Next(reachable);
    if (!stop) throw std::logic_error("pickup unreachable in service plan");
    const bool ahead = motion == Direction::kUp ? stop->floor >= reachable
                                                : stop->floor <= reachable;
    const auto time_to = [&](int floor) {
      if (car_.trip_target == floor) return car_.trip_remaining;
      return TravelTimeFromMotion(k, floor * h, building_.motion);
    };
    if (ahead) {
      t_ = time_to(stop->floor);
    } else {
      t_ = time_to(reachable) +
           TravelTimeRestToRest(std::abs(reachable - stop->floor) * h,
                                building_.motion);
      dir_ = Toward(reachable, stop->floor);
    }
    floor_ = stop->floor;
  }

  // Doors fully open at floor_ at time `when`: alight, then board.
  void ArriveWithDoorsOpen(double when) {
    std::erase(car_calls_, floor_);
    RuleInput in;
    in.floor = floor_;
    in.direction = dir_;
    in.car_calls = car_calls_;
    in.hall_calls = halls_;
    const std::optional<Direction> board = BoardingDirection(in);
    if (!board) return;
    dir_ = *board;
    for (size_t h = 0; h < halls_.size();) {
      if (halls_[h].floor != floor_ || halls_[h].dir != *board) {
        ++h;
        continue;
      }
      const int k = tracked_[h];
      if (k >= 0) {
        result_.pickup_times[k] = when;
        result_.order.push_back(k);
        --remaining_;
        if (destinations_[k] && *destinations_[k] != floor_) {
          const int dest = *destinations_[k];
          if (std::find(car_calls_.begin(), car_calls_.end(), dest) ==
              car_calls_.end()) {
            car_calls_.push_back(dest);
          }
        }
      }
      halls_.erase(halls_.begin() + static_cast<long>(h));
      tracked_.erase(tracked_.begin() + static_cast<long>(h));
    }
  }

  const CarSnapshot& car_;
  const BuildingConfig& building_;
  std::vector<int> car_calls_;
  std::vector<StopRequest> halls_;
  std::vector<int> tracked_;  // pickup index per hall entry, -1 if locked
  std::vector<std::optional<int>> destinations_;
  ServicePlanResult result_;
  int remaining_ = 0;
  double t_ = 0.0;
  int floor_ = 0;
  Direction dir_ = Direction::kIdle;
};

Pickup AsPickup(const HallCall& call) {
  return {call.floor, call.direction, call.press_time, call.id, std::nullopt};
}

}  // namespace

int ReachableFloor(const CarKinematicState& k, const BuildingConfig& building) {
  const double h = building.floor_height;
  const double stop = StoppingDistance(k.velocity, building.motion);
  int floor;
  if (k.velocity > 0.0) {
    floor = static_cast<int>(std::ceil((k.position + stop) / h - 1e-9));
  } else {
    floor = static_cast<int>(std::floor((k.position - stop) / h + 1e-9));
  }
  return std::clamp(floor, 0, building.floors - 1);
}

bool CarSnapshot::HasCarCall(int floor) const {
  return std::find(car_calls.begin(), car_calls.end(), floor) !=
         car_calls.end();
}

int CarSnapshot::FirstStoppableFloor(const BuildingConfig& building) const {
  const int reachable = ReachableFloor(kinematic, building);
  if (std::abs(kinematic.velocity) <= 1e-12 || !trip_target) return reachable;
  const double h = building.floor_height;
  const double ahead = (*trip_target * h - kinematic.position) *
                       (kinematic.velocity > 0.0 ? 1.0 : -1.0);
  const bool before = kinematic.velocity > 0.0 ? *trip_target < reachable
                                               : *trip_target > reachable;
  return ahead >= -1e-9 && before ? *trip_target : reachable;
}

void CarSnapshot::Validate(const BuildingConfig& building) const {
  kinematic.Validate(building.motion);
  if (trip_target &&
      (!building.IsFloor(*trip_target) || trip_remaining < 0.0)) {
    throw std::domain_error("invalid trip target");
  }
  if (capacity < 1 || load < 0 || load > capacity) {
    throw std::domain_error("car load must lie in [0, capacity]");
  }
  for (int f : car_calls) {
    if (!building.IsFloor(f)) throw std::domain_error("car call off building");
  }
  for (const StopRequest& s : locked_stops) {
    if (!building.HallButtonExists(s.floor, s.dir)) {
      throw std::domain_error("locked stop has no hall button");
    }
  }
}

void DestinationDistribution::Set(int origin, Direction d, Table table) {
  double total = 0.0;
  for (const auto& [floor, p] : table) {
    if (floor < 0 || floor >= floors_ || Toward(origin, floor) != d) {
      throw std::domain_error("destination not in the call's direction");
    }
    if (!(p >= 0.0)) throw std::domain_error("negative probability");
    total += p;
  }
  if (table.empty() || std::abs(total - 1.0) > 1e-9) {
    throw std::domain_error("destination probabilities must sum to 1");
  }
  overrides_[{origin, static_cast<int>(d)}] = std::move(table);
}

DestinationDistribution::Table DestinationDistribution::Candidates(
    int origin, Direction d) const {
  if (auto it = overrides_.find({origin, static_cast<int>(d)});
      it != overrides_.end()) {
    return it->second;
  }
  Table table;
  if (d == Direction::kUp) {
    for (int f = origin + 1; f < floors_; ++f) table.emplace_back(f, 0.0);
  } else if (d == Direction::kDown) {
    for (int f = 0; f < origin; ++f) table.emplace_back(f, 0.0);
  }
  for (auto& entry : table) entry.second = 1.0 / table.size();
  return table;
}

std::vector<HigherOrderTerm> MakeHigherOrderTerms(
    std::span<const std::pair<int, double>> config) {
  std::vector<HigherOrderTerm> terms;
  for (const auto& [k, penalty] : config) {
    if (k < 3) throw std::domain_error("higher-order terms need k >= 3");
    if (!(penalty >= 0.0)) {
      throw std::domain_error("higher-order penalty must be nonnegative");
    }
    terms.push_back({k, penalty});
  }
  return terms;
}

double HigherOrderPenalty(std::span<const HigherOrderTerm> terms, int m) {
  double total = 0.0;
  for (const HigherOrderTerm& t : terms) {
    if (m < t.k) continue;
    double binom = 1.0;
    for (int r = 0; r < t.k; ++r) binom = binom * (m - r) / (r + 1);
    total += t.penalty * binom;
  }
  return total;
}

WeightSet WeightSet::Zero(int num_calls, int num_cars) {
  WeightSet w;
  w.num_calls = num_calls;
  w.num_cars = num_cars;
  w.call_ids.resize(num_calls);
  for (int i = 0; i < num_calls; ++i) w.call_ids[i] = i;
  w.unary.assign(static_cast<size_t>(num_calls) * num_cars, 0.0);
  w.pairwise.assign(static_cast<size_t>(num_calls) * num_calls * num_cars, 0.0);
  w.penalty.assign(num_calls, 0.0);
  return w;
}

void WeightSet::SetPairwise(int i, int j, int c, double w) {
  pairwise[(c * num_calls + i) * num_calls + j] = w;
  pairwise[(c * num_calls + j) * num_calls + i] = w;
}

void WeightSet::ComputePenalties() {
  penalty.assign(num_calls, 0.0);
  for (int i = 0; i < num_calls; ++i) {
    double best = 0.0;
    for (int c = 0; c < num_cars; ++c) {
      double row = Unary(i, c);
      for (int j = 0; j < num_calls; ++j) {
        if (j != i) row += Pairwise(i, j, c);
      }
      best = c == 0 ? row : std::max(best, row);
    }
    penalty[i] = best;
  }
  // Same summation as h1(empty) so that f(empty) cancels exactly.
  offset = 0.0;
  for (int i = 0; i < num_calls; ++i) offset += penalty[i] * num_cars;
}

void WeightSet::Validate() const {
  for (double u : unary) {
    if (!(u >= 0.0)) throw std::logic_error("negative unary weight");
  }
  for (int c = 0; c < num_cars; ++c) {
    for (int i = 0; i < num_calls; ++i) {
      for (int j = 0; j < num_calls; ++j) {
        const double w = Pairwise(i, j, c);
        if (!(w >= 0.0)) throw std::logic_error("negative pairwise weight");
        if (w != Pairwise(j, i, c)) {
          throw std::logic_error("pairwise weights not symmetric");
        }
      }
    }
  }
  for (const HigherOrderTerm& t : higher_order) {
    if (t.k < 3 || !(t.penalty >= 0.0)) {
      throw std::logic_error("invalid higher-order term");
    }
  }
}

ServicePlanResult ServicePlan(const CarSnapshot& car,
                              std::span<const Pickup> pickups,
                              const BuildingConfig& building) {
  car.Validate(building);
  for (int f : car.car_calls) {
    if (!building.IsFloor(f)) throw std::domain_error("stop outside building");
  }
  return FrozenCar(car, pickups, building).Run();
}

double UnaryWeight(const CarSnapshot& car, const HallCall& call,
                   const BuildingConfig& building) {
  const Pickup p = AsPickup(call);
  return ServicePlan(car, std::span<const Pickup>(&p, 1), building)
      .pickup_times[0];
}

double JointExpectedWaiting(const CarSnapshot& car, const HallCall& a,
                            const HallCall& b,
                            const DestinationDistribution& dist,
                            const BuildingConfig& building) {
  if (a.id == b.id) throw std::domain_error("pairwise needs distinct calls");
  std::vector<Pickup> pickups = {AsPickup(a), AsPickup(b)};
  const ServicePlanResult probe = ServicePlan(car, pickups, building);
  const int first = probe.order[0];
  const int second = 1 - first;
  if (probe.pickup_times[first] == probe.pickup_times[second] &&
      pickups[0].floor == pickups[1].floor &&
      pickups[0].dir == pickups[1].dir) {
    // One stop boards both; the destination cannot matter.
    return probe.pickup_times[0] + probe.pickup_times[1];
  }
  double expected = 0.0;
  for (const auto& [floor, prob] :
       dist.Candidates(pickups[first].floor, pickups[first].dir)) {
    if (prob == 0.0) continue;
    pickups[first].destination = floor;
    const ServicePlanResult plan = ServicePlan(car, pickups, building);
    expected += prob * (plan.pickup_times[first] + plan.pickup_times[second]);
  }
  return expected;
}

double PairwiseWeight(const CarSnapshot& car, const HallCall& a,
                      const HallCall& b, const DestinationDistribution& dist,
                      const BuildingConfig& building) {
  const double joint = JointExpectedWaiting(car, a, b, dist, building);
  return std::max(0.0, joint - UnaryWeight(car, a, building) -
                           UnaryWeight(car, b, building));
}

double ApplyCoincidentBonus(double w, bool coincident) {
  if (!coincident) return w;
  return std::max(0.0, w - std::min(0.20 * w, 10.0));
}

double CapacityPenalty(const CarSnapshot& car, const WeightConfig& config) {
  if (!config.capacity_penalty) return 0.0;
  const int threshold = config.capacity_threshold > 0
                            ? config.capacity_threshold
                            : std::max(1, car.capacity - 1);
  return car.load >= threshold ? config.penalty_large : 0.0;
}

WeightSet BuildWeights(std::span<const CarSnapshot> cars,
                       std::span<const HallCall> calls,
                       const DestinationDistribution& dist,
                       const BuildingConfig& building,
                       const WeightConfig& config, WeightBuildStats* stats) {
  const int n = static_cast<int>(calls.size());
  const int num_cars = static_cast<int>(cars.size());
  if (n < 1 || num_cars < 1) {
    throw std::domain_error("weights need at least one call and one car");
  }
  std::set<std::pair<int, int>> seen;
  for (const HallCall& call : calls) {
    if (!seen.insert({call.floor, static_cast<int>(call.direction)}).second) {
      throw std::domain_error("duplicate (floor, direction) hall call");
    }
  }
  for (const CarSnapshot& car : cars) car.Validate(building);

  WeightBuildStats local;
  WeightSet w = WeightSet::Zero(n, num_cars);
  for (int i = 0; i < n; ++i) w.call_ids[i] = calls[i].id;
  std::vector<std::pair<int, double>> higher;
  for (const HigherOrderTerm& t : config.higher_order) {
    higher.emplace_back(t.k, t.penalty);
  }
  w.higher_order = MakeHigherOrderTerms(higher);

  std::vector<double> raw(static_cast<size_t>(n) * num_cars);
  for (int c = 0; c < num_cars; ++c) {
    for (int i = 0; i < n; ++i) {
      raw[i * num_cars + c] = UnaryWeight(cars[c], calls[i], building);
      ++local.plan_evaluations;
    }
  }
  if (config.pairwise) {
    for (int c = 0; c < num_cars; ++c) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double joint =
              JointExpectedWaiting(cars[c], calls[i], calls[j], dist, building);
          ++local.plan_evaluations;
          w.SetPairwise(i, j, c,
                        std::max(0.0, joint - raw[i * num_cars + c] -
                                          raw[j * num_cars + c]));
        }
      }
    }
  }
  for (int c = 0; c < num_cars; ++c) {
    for (int i = 0; i < n; ++i) {
      const double u = raw[i * num_cars + c];
      w.Unary(i, c) =
          config.coincident_bonus
              ? ApplyCoincidentBonus(u, cars[c].HasCarCall(calls[i].floor))
              : u;
    }
  }

  w.ComputePenalties();
  for (double p : w.penalty) {
    local.max_honest_penalty = std::max(local.max_honest_penalty, p);
  }
  for (int c = 0; c < num_cars; ++c) {
    double extra = CapacityPenalty(cars[c], config);
    if (extra <= 0.0) continue;
    if (extra <= local.max_honest_penalty) {
      // The penalty must dominate every honest p_i or greedy could place a
      // penalised assignment ahead of a regular one.
      extra = 2.0 * local.max_honest_penalty;
      local.penalty_raised = true;
    }
    for (int i = 0; i < n; ++i) w.Unary(i, c) += extra;
  }
  w.ComputePenalties();
  if (stats != nullptr) *stats = local;
  return w;
}

}  // namespace elevsched
