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

// Waiting-time weights for one scheduling epoch.
//
// The estimated total waiting time of an assignment x is the quadratic
//
//   g(x) = sum_{i,c} w_i^c x_i^c + sum_{i<j,c} w_ij^c x_i^c x_j^c
//          + sum_{c, k-subsets S} w_S^c prod_{i in S} x_i^c
//
// where w_i^c is the time for car c to pick up call i alone, w_ij^c the
// expected extra waiting when c serves both i and j, and the optional
// higher-order terms penalise loading many calls onto one car.
//
// All times are measured from the snapshot instant and end when the doors
// are fully open at the pickup floor, which is when the simulator boards
// passengers.

#ifndef ELEVSCHED_WAITING_MODEL_H_
#define ELEVSCHED_WAITING_MODEL_H_

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "elevsched/building.h"
#include "elevsched/kinematics.h"
#include "elevsched/movement_rules.h"

namespace elevsched {

struct HallCall {
  int id = 0;
  int floor = 0;
  Direction direction = Direction::kUp;
  double press_time = 0.0;
  std::optional<int> assigned_car;
  bool locked = false;

  StopRequest AsStop() const { return {floor, direction, press_time, id}; }
};

struct CarSnapshot {
  int car_index = 0;
  CarKinematicState kinematic;
  Direction committed_direction = Direction::kIdle;
  std::vector<int> car_calls;  // sorted, unique
  int load = 0;
  int capacity = 12;
  // Hall calls this car has committed to and that are no longer up for
  // reassignment. They are served like any other stop.
  std::vector<StopRequest> locked_stops;
  // Floor a moving car is currently braking or cruising towards, with the
  // exact time left until it is level there. The car can always stop at
  // this floor even when a zero-acceleration estimate says it cannot.
  std::optional<int> trip_target;
  double trip_remaining = 0.0;

  // First floor the car can stop at without reversing, in its direction of
  // motion; its own floor when at rest.
  int FirstStoppableFloor(const BuildingConfig& building) const;
  bool HasCarCall(int floor) const;
  // Throws std::domain_error for an inconsistent snapshot.
  void Validate(const BuildingConfig& building) const;
};

// First floor a moving car can still stop at without reversing, assuming
// zero acceleration; the current floor for a car at rest.
int ReachableFloor(const CarKinematicState& k, const BuildingConfig& building);

// Probability of each destination floor for a passenger behind a hall call.
class DestinationDistribution {
 public:
  using Table = std::vector<std::pair<int, double>>;

  explicit DestinationDistribution(int floors) : floors_(floors) {}
  // Equally likely destinations over every floor in the call's direction.
  static DestinationDistribution Uniform(int floors) {
    return DestinationDistribution(floors);
  }

  // Replaces the table for (origin, d). Throws std::domain_error unless the
  // floors lie strictly in direction d from the origin and the
  // probabilities are nonnegative and sum to 1.
  void Set(int origin, Direction d, Table table);
  void SetPointMass(int origin, Direction d, int destination) {
    Set(origin, d, {{destination, 1.0}});
  }
  Table Candidates(int origin, Direction d) const;
  int floors() const { return floors_; }

 private:
  int floors_;
  std::map<std::pair<int, int>, Table> overrides_;
};

struct HigherOrderTerm {
  int k = 3;
  double penalty = 0.0;
};

// Validates a (k, penalty) list: k >= 3 and penalty >= 0, else
// std::domain_error. The returned terms apply to every car and every
// k-subset of calls assigned to it.
std::vector<HigherOrderTerm> MakeHigherOrderTerms(
    std::span<const std::pair<int, double>> config);

// Penalty contributed by `terms` when `m` calls share one car:
// sum_k penalty_k * binom(m, k).
double HigherOrderPenalty(std::span<const HigherOrderTerm> terms, int m);

struct WeightConfig {
  bool pairwise = true;
  bool coincident_bonus = true;
  std::vector<HigherOrderTerm> higher_order;
  bool capacity_penalty = true;
  // Load at or above which a car is treated as full; <= 0 means
  // capacity - 1.
  int capacity_threshold = 0;
  double penalty_large = 1e4;
};

struct WeightSet {
  int num_calls = 0;
  int num_cars = 0;
  std::vector<int> call_ids;
  std::vector<double> unary;     // [i * C + c]
  std::vector<double> pairwise;  // [(c * N + i) * N + j], symmetric
  std::vector<HigherOrderTerm> higher_order;
  std::vector<double> penalty;  // p_i
  double offset = 0.0;          // C * sum_i p_i

  static WeightSet Zero(int num_calls, int num_cars);

  double Unary(int i, int c) const { return unary[i * num_cars + c]; }
  double& Unary(int i, int c) { return unary[i * num_cars + c]; }
  double Pairwise(int i, int j, int c) const {
    return pairwise[(c * num_calls + i) * num_calls + j];
  }
  void SetPairwise(int i, int j, int c, double w);

  // p_i = max_c (w_i^c + sum_{j != i} w_ij^c) and the offset C * sum p_i.
  void ComputePenalties();
  // Nonnegativity and symmetry; throws std::logic_error on violation.
  void Validate() const;
};

struct Pickup {
  int floor = 0;
  Direction dir = Direction::kUp;
  double press_time = 0.0;
  int id = 0;
  // Car call registered when this pickup boards; none leaves the car empty.
  std::optional<int> destination;
};

struct ServicePlanResult {
  std::vector<double> pickup_times;  // indexed like the input pickups
  std::vector<int> order;            // pickup indices in boarding order
};

// Frozen-world micro-simulation of one car: serves its car calls, locked
// stops and `pickups` under collective order with no new arrivals, and
// reports when each pickup's doors are fully open. Throws
// std::domain_error for floors outside the building or hall directions
// that do not exist on that floor.
ServicePlanResult ServicePlan(const CarSnapshot& car,
                              std::span<const Pickup> pickups,
                              const BuildingConfig& building);

// w_i^c: waiting for `call` if it were the only call given to `car`.
double UnaryWeight(const CarSnapshot& car, const HallCall& call,
                   const BuildingConfig& building);

// Expected total waiting of both calls when `car` serves both, averaging
// over the destination of whichever call boards first.
double JointExpectedWaiting(const CarSnapshot& car, const HallCall& a,
                            const HallCall& b,
                            const DestinationDistribution& dist,
                            const BuildingConfig& building);

// w_ij^c = JointExpectedWaiting - w_i^c - w_j^c, floored at zero.
double PairwiseWeight(const CarSnapshot& car, const HallCall& a,
                      const HallCall& b, const DestinationDistribution& dist,
                      const BuildingConfig& building);

// w - min(0.2 w, 10) when the car already stops at the call's floor.
double ApplyCoincidentBonus(double w, bool coincident);

double CapacityPenalty(const CarSnapshot& car, const WeightConfig& config);

struct WeightBuildStats {
  double max_honest_penalty = 0.0;  // max p_i without capacity penalties
  bool penalty_raised = false;
  long plan_evaluations = 0;
};

// Fills unary (bonus and capacity penalty applied), pairwise and
// higher-order terms, then p_i and the offset. Throws std::domain_error for
// empty inputs or two calls sharing a (floor, direction).
WeightSet BuildWeights(std::span<const CarSnapshot> cars,
                       std::span<const HallCall> calls,
                       const DestinationDistribution& dist,
                       const BuildingConfig& building,
                       const WeightConfig& config,
                       WeightBuildStats* stats = nullptr);

}  // namespace elevsched

#endif  // ELEVSCHED_WAITING_MODEL_H_
