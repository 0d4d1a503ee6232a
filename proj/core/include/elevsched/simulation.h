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

// Discrete-event group-elevator world.
//
// Events are processed in time order; equal times are ordered passenger
// arrivals, then car events, then scheduler epochs, then insertion order.
// A scheduler epoch runs every `epoch` seconds and immediately after every
// new hall call. Passengers board only the car their hall call is assigned
// to, at the instant its doors are fully open; waiting time ends there.

#ifndef ELEVSCHED_SIMULATION_H_
#define ELEVSCHED_SIMULATION_H_

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elevsched/building.h"
#include "elevsched/waiting_model.h"

namespace elevsched {

struct Passenger {
  int id = 0;
  double arrival_time = 0.0;
  int origin = 0;
  int destination = 1;
  std::optional<double> board_time;
  std::optional<double> alight_time;

  Direction direction() const { return Toward(origin, destination); }
};

enum class EventKind {
  kPassengerArrival = 0,
  kCarArrivesAtFloor = 1,
  kDoorPhaseComplete = 2,
  kSchedulerEpoch = 3,
};

std::string_view EventKindName(EventKind kind);

struct SimEvent {
  double time = 0.0;
  EventKind kind = EventKind::kSchedulerEpoch;
  int car = -1;
  int payload = -1;  // passenger index for arrivals
  long version = 0;  // stale car events are dropped
  long seq = 0;
};

struct RunStats {
  double awt = 0.0;  // 0 when nobody was served; see `empty`
  std::vector<double> waits;
  double att = 0.0;
  int served = 0;
  int unserved_at_end = 0;
  bool empty = true;
  int generated = 0;
  long epochs = 0;
  long reassignments = 0;
  long penalty_raises = 0;

  bool operator==(const RunStats&) const = default;
};

// Everything a scheduler may look at during one epoch.
struct SchedulingContext {
  double now = 0.0;
  const BuildingConfig* building = nullptr;
  std::span<const CarSnapshot> cars;
  // Pending hall calls open for (re)assignment, sorted by id.
  std::span<const HallCall> calls;
  const DestinationDistribution* destinations = nullptr;
};

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual std::string Name() const = 0;
  // Returns hall-call id -> car index for calls in ctx.calls. Calls left out
  // keep their previous assignment.
  virtual std::map<int, int> Assign(const SchedulingContext& ctx) = 0;
  // Number of times a capacity penalty had to be raised above p_i.
  virtual long penalty_raises() const { return 0; }
};

struct TraceRecord {
  double time = 0.0;
  std::string_view kind;
  int car = -1;
  int floor = -1;
  int call = -1;
  int passenger = -1;
};

// One JSON object per line, preceded by a schema header line.
void WriteTraceHeader(std::ostream& out);
void WriteTraceRecord(std::ostream& out, const TraceRecord& record);

// Starting state of one car; defaults to parked at the lobby.
struct InitialCar {
  int floor = 0;
  DoorState door;
  Direction direction = Direction::kIdle;
  std::vector<int> onboard_destinations;
};

struct SimOptions {
  double horizon = 3600.0;
  double epoch = 1.0;
  double lock_threshold = 3.0;
  // Extra time allowed after the horizon to deliver everyone.
  double drain_limit = 4 * 3600.0;
  std::vector<InitialCar> initial_cars;  // empty: all parked at the lobby
  std::optional<DestinationDistribution> destinations;  // default uniform
  std::function<void(const TraceRecord&)> trace;
};

// Runs the event loop to the horizon and then drains. Deterministic given
// its inputs. Throws std::domain_error for malformed traffic (unsorted
// arrivals, floors outside the building, origin == destination, arrivals
// outside [0, horizon)).
RunStats Run(const BuildingConfig& building, std::span<const Passenger> traffic,
             Scheduler& scheduler, const SimOptions& options = {});

// Same, also returning the final passenger records.
RunStats Run(const BuildingConfig& building, std::span<const Passenger> traffic,
             Scheduler& scheduler, const SimOptions& options,
             std::vector<Passenger>* passengers_out);

enum class CarActionKind { kContinue, kStopAt, kReverse, kPark };

struct CarAction {
  CarActionKind kind = CarActionKind::kPark;
  int floor = 0;
  Direction serve = Direction::kIdle;
};

// Collective-control motion decision for one car given the hall calls
// assigned to it. `current_target` is the floor a moving car is currently
// braking for, if any.
CarAction CarNextAction(const CarSnapshot& car,
                        std::span<const StopRequest> assigned,
                        const BuildingConfig& building,
                        std::optional<int> current_target = std::nullopt);

// Waiting time of a boarded passenger; nullopt while still waiting.
std::optional<double> MeasureWait(const Passenger& p);

}  // namespace elevsched

#endif  // ELEVSCHED_SIMULATION_H_
