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

#include "elevsched/simulation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace elevsched {
namespace {

bool AtOrAhead(int floor, int ref, Direction d) {
  return d == Direction::kUp ? floor >= ref : floor <= ref;
}

double PhaseDuration(const DoorTiming& doors, DoorPhase phase) {
  switch (phase) {
    case DoorPhase::kOpening:
      return doors.open_time;
    case DoorPhase::kOpen:
      return doors.dwell_time;
    case DoorPhase::kClosing:
      return doors.close_time;
    case DoorPhase::kClosed:
      break;
  }
  return 0.0;
}

struct EventLater {
  bool operator()(const SimEvent& a, const SimEvent& b) const {
    return std::make_tuple(a.time, static_cast<int>(a.kind), a.seq) >
           std::make_tuple(b.time, static_cast<int>(b.kind), b.seq);
  }
};

struct CarRt {
  int index = 0;
  int floor = 0;  // current floor at rest, trip target while moving
  bool moving = false;
  MotionProfile trip;
  double trip_start = 0.0;
  double trip_end = 0.0;
  Direction serve_at_target = Direction::kIdle;
  DoorPhase door = DoorPhase::kClosed;
  double door_start = 0.0;
  Direction dir = Direction::kIdle;
  bool parked = false;
  std::vector<int> car_calls;  // sorted
  std::vector<int> onboard;    // passenger indices
  long version = 0;
  std::vector<int> seen_assigned;
};

struct ActiveCall {
  HallCall call;
  std::deque<int> waiting;
};

class World {
 public:
  World(const BuildingConfig& building, std::span<const Passenger> traffic,
        Scheduler& scheduler, const SimOptions& options)
      : building_(building),
        scheduler_(scheduler),
        options_(options),
        destinations_(options.destinations
                          ? *options.destinations
                          : DestinationDistribution::Uniform(building.floors)),
        counted_(static_cast<int>(traffic.size())) {
    building_.Validate();
    if (!(options.epoch > 0.0) || !(options.horizon >= 0.0) ||
        options.drain_limit < 0.0 || options.lock_threshold < 0.0) {
      throw std::domain_error("invalid simulation options");
    }
    double last = 0.0;
    for (const Passenger& p : traffic) {
      if (!building.IsFloor(p.origin) || !building.IsFloor(p.destination) ||
          p.origin == p.destination) {
        throw std::domain_error("passenger " + std::to_string(p.id) +
                                " has invalid floors");
      }
      if (p.arrival_time < last || p.arrival_time < 0.0 ||
          p.arrival_time >= options.horizon) {
        throw std::domain_error("passenger " + std::to_string(p.id) +
                                " arrival out of order or outside horizon");
      }
      last = p.arrival_time;
      Passenger copy = p;
      copy.board_time.reset();
      copy.alight_time.reset();
      passengers_.push_back(copy);
    }
    InitCars();
  }

  RunStats Run() {
    for (int p = 0; p < counted_; ++p) {
      Push(passengers_[p].arrival_time, EventKind::kPassengerArrival, -1, p, 0);
    }
    Push(0.0, EventKind::kSchedulerEpoch, -1, 1, 0);
    const double limit = options_.horizon + options_.drain_limit;
    while (!queue_.empty()) {
      const SimEvent e = queue_.top();
      queue_.pop();
      if (e.time > limit) break;
      now_ = e.time;
      switch (e.kind) {
        case EventKind::kPassengerArrival:
          OnArrival(e.payload);
          break;
        case EventKind::kCarArrivesAtFloor:
          if (e.version == cars_[e.car].version) OnTripEnd(cars_[e.car]);
          break;
        case EventKind::kDoorPhaseComplete:
          if (e.version == cars_[e.car].version) OnDoorPhase(cars_[e.car]);
          break;
        case EventKind::kSchedulerEpoch:
          OnEpoch(e.payload == 1);
          break;
      }
    }
    return Stats();
  }

  std::vector<Passenger> TakePassengers() {
    passengers_.resize(counted_);
    return std::move(passengers_);
  }

 private:
  void InitCars() {
    cars_.resize(building_.cars);
    for (int c = 0; c < building_.cars; ++c) cars_[c].index = c;
    if (options_.initial_cars.empty()) return;
    if (static_cast<int>(options_.initial_cars.size()) != building_.cars) {
      throw std::domain_error("initial state must describe every car");
    }
    for (int c = 0; c < building_.cars; ++c) {
      const InitialCar& init = options_.initial_cars[c];
      CarRt& car = cars_[c];
      if (!building_.IsFloor(init.floor)) {
        throw std::domain_error("initial car floor outside building");
      }
      const double span = PhaseDuration(building_.doors, init.door.phase);
      if (init.door.elapsed < 0.0 || init.door.elapsed > span + 1e-9) {
        throw std::domain_error("initial door elapsed out of range");
      }
      if (static_cast<int>(init.onboard_destinations.size()) >
          building_.car_capacity) {
        throw std::domain_error("initial load exceeds capacity");
      }
      car.floor = init.floor;
      car.dir = init.direction;
      car.door = init.door.phase;
      car.door_start = -init.door.elapsed;
      for (int dest : init.onboard_destinations) {
        if (!building_.IsFloor(dest) || dest == init.floor) {
          throw std::domain_error("initial onboard destination invalid");
        }
        Passenger p;
        p.id = -1 - static_cast<int>(passengers_.size());
        p.origin = init.floor;
        p.destination = dest;
        p.board_time = 0.0;
        car.onboard.push_back(static_cast<int>(passengers_.size()));
        passengers_.push_back(p);
        AddCarCall(car, dest);
      }
      if (car.door != DoorPhase::kClosed) {
        Push(span - init.door.elapsed, EventKind::kDoorPhaseComplete, c, -1,
             car.version);
      }
    }
  }

  void Push(double t, EventKind kind, int car, int payload, long version) {
    queue_.push({t, kind, car, payload, version, seq_++});
  }

  void Trace(std::string_view kind, int car = -1, int floor = -1, int call = -1,
             int passenger = -1) {
    if (options_.trace) {
      options_.trace({now_, kind, car, floor, call, passenger});
    }
  }

  static void AddCarCall(CarRt& car, int floor) {
    const auto it =
        std::lower_bound(car.car_calls.begin(), car.car_calls.end(), floor);
    if (it == car.car_calls.end() || *it != floor) {
      car.car_calls.insert(it, floor);
    }
  }

  ActiveCall* FindCall(int floor, Direction d) {
    for (auto& [id, ac] : calls_) {
      if (ac.call.floor == floor && ac.call.direction == d) return &ac;
    }
    return nullptr;
  }

  int NewCall(int floor, Direction d, std::deque<int> waiting) {
    const int id = next_call_id_++;
    ActiveCall ac;
    ac.call.id = id;
    ac.call.floor = floor;
    ac.call.direction = d;
    ac.call.press_time = now_;
    ac.waiting = std::move(waiting);
    calls_.emplace(id, std::move(ac));
    Trace("hall_call", -1, floor, id);
    RequestEpoch();
    return id;
  }

  void RequestEpoch() {
    if (epoch_queued_at_ && *epoch_queued_at_ == now_) return;
    epoch_queued_at_ = now_;
    Push(now_, EventKind::kSchedulerEpoch, -1, 0, 0);
  }

  std::vector<int> AssignedIds(int car) const {
    std::vector<int> ids;
    for (const auto& [id, ac] : calls_) {
      if (ac.call.assigned_car == car) ids.push_back(id);
    }
    return ids;
  }

  std::vector<StopRequest> AssignedStops(int car) const {
    std::vector<StopRequest> stops;
    for (const auto& [id, ac] : calls_) {
      if (ac.call.assigned_car == car) stops.push_back(ac.call.AsStop());
    }
    return stops;
  }

  bool Full(const CarRt& car) const {
    return static_cast<int>(car.onboard.size()) >= building_.car_capacity;
  }

  CarKinematicState Kinematic(const CarRt& car) const {
    CarKinematicState k;
    if (car.moving) {
      const MotionProfile::Sample s = car.trip.At(now_ - car.trip_start);
      k.position = s.position;
      k.velocity = s.velocity;
    } else {
      k.position = building_.FloorPosition(car.floor);
      k.door.phase = car.door;
      k.door.elapsed = std::clamp(now_ - car.door_start, 0.0,
                                  PhaseDuration(building_.doors, car.door));
    }
    return k;
  }

  CarSnapshot Snapshot(const CarRt& car, bool with_locked) const {
    CarSnapshot s;
    s.car_index = car.index;
    s.kinematic = Kinematic(car);
    s.committed_direction = car.dir;
    s.car_calls = car.car_calls;
    s.load = static_cast<int>(car.onboard.size());
    s.capacity = building_.car_capacity;
    if (car.moving) {
      s.trip_target = car.floor;
      s.trip_remaining = std::max(0.0, car.trip_end - now_);
    }
    if (with_locked) {
      for (const auto& [id, ac] : calls_) {
        if (ac.call.locked && ac.call.assigned_car == car.index) {
          s.locked_stops.push_back(ac.call.AsStop());
        }
      }
    }
    return s;
  }

  void OnArrival(int p) {
    Passenger& pas = passengers_[p];
    Trace("passenger_arrival", -1, pas.origin, -1, pas.id);
    const Direction d = pas.direction();
    if (ActiveCall* ac = FindCall(pas.origin, d)) {
      ac->waiting.push_back(p);
      if (ac->call.assigned_car) {
        CarRt& car = cars_[*ac->call.assigned_car];
        if (!car.moving && car.door == DoorPhase::kOpen &&
            car.floor == pas.origin) {
          TryBoard(car);
        }
      }
      return;
    }
    NewCall(pas.origin, d, {p});
  }

  void OnEpoch(bool tick) {
    if (!tick && epoch_queued_at_ && *epoch_queued_at_ == now_) {
      epoch_queued_at_.reset();
    }
    ++epochs_;
    if (tick) {
      ++tick_;
      const double next = tick_ * options_.epoch;
      if (next < options_.horizon ||
          (PendingWork() && next <= options_.horizon + options_.drain_limit)) {
        Push(next, EventKind::kSchedulerEpoch, -1, 1, 0);
      }
    }
    for (auto& [id, ac] : calls_) {
      if (ac.call.locked && Full(cars_[*ac.call.assigned_car])) {
        ac.call.locked = false;
        Trace("unlock", *ac.call.assigned_car, ac.call.floor, id);
      }
    }
    std::vector<HallCall> open;
    for (const auto& [id, ac] : calls_) {
      if (!ac.call.locked) open.push_back(ac.call);
    }
    if (!open.empty()) {
      std::vector<CarSnapshot> snaps;
      for (const CarRt& car : cars_) snaps.push_back(Snapshot(car, true));
      SchedulingContext ctx;
      ctx.now = now_;
      ctx.building = &building_;
      ctx.cars = snaps;
      ctx.calls = open;
      ctx.destinations = &destinations_;
      const std::map<int, int> result = scheduler_.Assign(ctx);
      for (const auto& [id, car] : result) {
        const auto it = calls_.find(id);
        if (it == calls_.end() || it->second.call.locked) {
          throw std::logic_error("scheduler assigned an unknown call");
        }
        if (car < 0 || car >= building_.cars) {
          throw std::logic_error("scheduler returned an invalid car");
        }
        HallCall& call = it->second.call;
        if (call.assigned_car == car) continue;
        if (call.assigned_car) ++reassignments_;
        call.assigned_car = car;
        Trace("assign", car, call.floor, id);
      }
    }
    for (CarRt& car : cars_) React(car);
    UpdateLocks();
  }

  void React(CarRt& car) {
    const std::vector<int> ids = AssignedIds(car.index);
    const bool changed = ids != car.seen_assigned;
    if (car.moving) {
      if (changed) Retarget(car);
    } else if (car.door == DoorPhase::kOpen) {
      if (changed) TryBoard(car);
    } else if (car.door == DoorPhase::kClosed) {
      Decide(car);
    }
    car.seen_assigned = ids;
  }

  void UpdateLocks() {
    for (auto& [id, ac] : calls_) {
      HallCall& call = ac.call;
      if (call.locked || !call.assigned_car) continue;
      const CarRt& car = cars_[*call.assigned_car];
      if (Full(car) || car.floor != call.floor ||
          car.serve_at_target != call.direction) {
        continue;
      }
      const bool arriving =
          car.moving && car.trip_end - now_ <= options_.lock_threshold;
      const bool opening = !car.moving && car.door == DoorPhase::kOpening;
      if (arriving || opening) {
        call.locked = true;
        Trace("lock", car.index, call.floor, id);
      }
    }
  }

  void Decide(CarRt& car) {
    const std::vector<StopRequest> stops = AssignedStops(car.index);
    const CarAction action =
        CarNextAction(Snapshot(car, false), stops, building_);
    car.seen_assigned = AssignedIds(car.index);
    if (action.kind == CarActionKind::kPark) {
      if (!car.parked) Trace("park", car.index, car.floor);
      car.parked = true;
      car.dir = Direction::kIdle;
      car.serve_at_target = Direction::kIdle;
      return;
    }
    car.parked = false;
    car.serve_at_target = action.serve;
    if (action.floor == car.floor) {
      OpenDoors(car);
      return;
    }
    car.dir = DepartureDirection(car.floor, Stop{action.floor, action.serve});
    const double from = building_.FloorPosition(car.floor);
    const double to = building_.FloorPosition(action.floor);
    car.trip = PlanRestToRest(from, to, building_.motion);
    car.trip_start = now_;
    car.trip_end =
        now_ + TravelTimeRestToRest(std::abs(to - from), building_.motion);
    Trace("depart", car.index, car.floor);
    car.floor = action.floor;
    car.moving = true;
    ++car.version;
    Push(car.trip_end, EventKind::kCarArrivesAtFloor, car.index, -1,
         car.version);
  }

  void Retarget(CarRt& car) {
    const std::vector<StopRequest> stops = AssignedStops(car.index);
    CarSnapshot snap = Snapshot(car, false);
    const CarAction action = CarNextAction(snap, stops, building_, car.floor);
    if (action.kind == CarActionKind::kContinue) return;
    if (action.floor == car.floor) {
      car.serve_at_target = action.serve;
      return;
    }
    const CarKinematicState& k = snap.kinematic;
    const double target = building_.FloorPosition(action.floor);
    car.trip = PlanFromMotion(k.position, k.velocity, target, building_.motion);
    car.trip_start = now_;
    car.trip_end = now_ + TravelTimeFromMotion(k, target, building_.motion);
    car.floor = action.floor;
    car.serve_at_target =
        action.kind == CarActionKind::kStopAt ? action.serve : Direction::kIdle;
    ++car.version;
    Trace("retarget", car.index, car.floor);
    Push(car.trip_end, EventKind::kCarArrivesAtFloor, car.index, -1,
         car.version);
  }

  void OnTripEnd(CarRt& car) {
    car.moving = false;
    Trace("arrive", car.index, car.floor);
    Decide(car);
  }

  void OpenDoors(CarRt& car) {
    car.door = DoorPhase::kOpening;
    car.door_start = now_;
    ++car.version;
    Trace("door_opening", car.index, car.floor);
    Push(now_ + building_.doors.open_time, EventKind::kDoorPhaseComplete,
         car.index, -1, car.version);
  }

  void OnDoorPhase(CarRt& car) {
    const DoorTiming& doors = building_.doors;
    switch (car.door) {
      case DoorPhase::kOpening: {
        car.door = DoorPhase::kOpen;
        car.door_start = now_;
        Trace("door_open", car.index, car.floor);
        std::erase(car.car_calls, car.floor);
        for (size_t k = 0; k < car.onboard.size();) {
          Passenger& p = passengers_[car.onboard[k]];
          if (p.destination != car.floor) {
            ++k;
            continue;
          }
          p.alight_time = now_;
          Trace("alight", car.index, car.floor, -1, p.id);
          car.onboard.erase(car.onboard.begin() + static_cast<long>(k));
        }
        TryBoard(car);
        car.seen_assigned = AssignedIds(car.index);
        Push(now_ + doors.dwell_time, EventKind::kDoorPhaseComplete, car.index,
             -1, car.version);
        break;
      }
      case DoorPhase::kOpen:
        if (TryBoard(car) > 0) {
          Push(now_ + doors.dwell_time, EventKind::kDoorPhaseComplete,
               car.index, -1, car.version);
          break;
        }
        car.door = DoorPhase::kClosing;
        car.door_start = now_;
        Trace("door_closing", car.index, car.floor);
        Push(now_ + doors.close_time, EventKind::kDoorPhaseComplete, car.index,
             -1, car.version);
        break;
      case DoorPhase::kClosing:
        car.door = DoorPhase::kClosed;
        car.door_start = now_;
        Trace("door_closed", car.index, car.floor);
        Decide(car);
        break;
      case DoorPhase::kClosed:
        throw std::logic_error("door event for a closed car");
    }
  }

  // Boards the assigned hall call the car serves here; returns the number
  // of passengers that boarded.
  int TryBoard(CarRt& car) {
    const std::vector<StopRequest> stops = AssignedStops(car.index);
    RuleInput in;
    in.floor = car.floor;
    in.direction = car.dir;
    in.car_calls = car.car_calls;
    in.hall_calls = stops;
    in.full = Full(car);
    const std::optional<Direction> serve = BoardingDirection(in);
    if (!serve) return 0;
    car.dir = *serve;
    ActiveCall* ac = FindCall(car.floor, *serve);
    if (ac == nullptr || ac->call.assigned_car != car.index) {
      throw std::logic_error("boarding call vanished");
    }
    const int id = ac->call.id;
    int boarded = 0;
    while (!ac->waiting.empty() && !Full(car)) {
      const int p = ac->waiting.front();
      ac->waiting.pop_front();
      passengers_[p].board_time = now_;
      car.onboard.push_back(p);
      AddCarCall(car, passengers_[p].destination);
      Trace("board", car.index, car.floor, id, passengers_[p].id);
      ++boarded;
    }
    std::deque<int> left = std::move(ac->waiting);
    calls_.erase(id);
    if (!left.empty()) NewCall(car.floor, *serve, std::move(left));
    return boarded;
  }

  bool PendingWork() const {
    if (!calls_.empty()) return true;
    for (const CarRt& car : cars_) {
      if (!car.onboard.empty() || car.moving ||
          car.door != DoorPhase::kClosed) {
        return true;
      }
    }
    return false;
  }

  RunStats Stats() const {
    RunStats s;
    s.generated = counted_;
    double travel = 0.0;
    int delivered = 0;
    for (int p = 0; p < counted_; ++p) {
      const Passenger& pas = passengers_[p];
      if (const std::optional<double> w = MeasureWait(pas)) {
        s.waits.push_back(*w);
        s.awt += *w;
      }
      if (pas.alight_time) {
        travel += *pas.alight_time - pas.arrival_time;
        ++delivered;
      }
    }
    s.served = static_cast<int>(s.waits.size());
    s.unserved_at_end = counted_ - s.served;
    s.empty = s.served == 0;
    if (!s.empty) s.awt /= s.served;
    if (delivered > 0) s.att = travel / delivered;
    s.epochs = epochs_;
    s.reassignments = reassignments_;
    s.penalty_raises = scheduler_.penalty_raises();
    return s;
  }

  BuildingConfig building_;
  Scheduler& scheduler_;
  const SimOptions& options_;
  DestinationDistribution destinations_;
  int counted_;
  std::vector<Passenger> passengers_;
  std::vector<CarRt> cars_;
  std::map<int, ActiveCall> calls_;
  std::priority_queue<SimEvent, std::vector<SimEvent>, EventLater> queue_;
  long seq_ = 0;
  double now_ = 0.0;
  long tick_ = 0;
  std::optional<double> epoch_queued_at_;
  int next_call_id_ = 0;
  long epochs_ = 0;
  long reassignments_ = 0;
};

}  // namespace

std::string_view EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kPassengerArrival:
      return "passenger_arrival";
    case EventKind::kCarArrivesAtFloor:
      return "car_arrives_at_floor";
    case EventKind::kDoorPhaseComplete:
      return "door_phase_complete";
    case EventKind::kSchedulerEpoch:
      return "scheduler_epoch";
  }
  return "unknown";
}

void WriteTraceHeader(std::ostream& out) {
  out << R"({"schema":"elevsched-trace","version":1,)"
      << R"("fields":["t","kind","car","floor","call","passenger"]})" << '\n';
}

void WriteTraceRecord(std::ostream& out, const TraceRecord& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", r.time);
  out << "{\"t\":" << buf << ",\"kind\":\"" << r.kind << "\",\"car\":" << r.car
      << ",\"floor\":" << r.floor << ",\"call\":" << r.call
      << ",\"passenger\":" << r.passenger << "}\n";
}

RunStats Run(const BuildingConfig& building, std::span<const Passenger> traffic,
             Scheduler& scheduler, const SimOptions& options) {
  return Run(building, traffic, scheduler, options, nullptr);
}

RunStats Run(const BuildingConfig& building, std::span<const Passenger> traffic,
             Scheduler& scheduler, const SimOptions& options,
             std::vector<Passenger>* passengers_out) {
  World world(building, traffic, scheduler, options);
  RunStats stats = world.Run();
  if (passengers_out != nullptr) *passengers_out = world.TakePassengers();
  return stats;
}

CarAction CarNextAction(const CarSnapshot& car,
                        std::span<const StopRequest> assigned,
                        const BuildingConfig& building,
                        std::optional<int> current_target) {
  std::vector<StopRequest> halls(assigned.begin(), assigned.end());
  halls.insert(halls.end(), car.locked_stops.begin(), car.locked_stops.end());
  RuleInput in;
  in.car_calls = car.car_calls;
  in.hall_calls = halls;
  in.full = car.load >= car.capacity;
  const CarKinematicState& k = car.kinematic;
  if (std::abs(k.velocity) > 1e-9) {
    const Direction motion =
        k.velocity > 0.0 ? Direction::kUp : Direction::kDown;
    const int reachable = car.FirstStoppableFloor(building);
    in.floor = reachable;
    in.direction = motion;
    const std::optional<Stop> stop = NextStop(in);
    if (!stop) return {CarActionKind::kPark, reachable, Direction::kIdle};
    if (!AtOrAhead(stop->floor, reachable, motion)) {
      return {CarActionKind::kReverse, reachable, Direction::kIdle};
    }
    if (current_target == stop->floor) {
      return {CarActionKind::kContinue, stop->floor, stop->serve};
    }
    return {CarActionKind::kStopAt, stop->floor, stop->serve};
  }
  const int floor =
      static_cast<int>(std::lround(k.position / building.floor_height));
  in.floor = floor;
  in.direction = car.committed_direction;
  const std::optional<Stop> stop = NextStop(in);
  if (!stop) return {CarActionKind::kPark, floor, Direction::kIdle};
  const Direction heading = Toward(floor, stop->floor);
  if (heading != Direction::kIdle &&
      car.committed_direction != Direction::kIdle &&
      heading != car.committed_direction) {
    return {CarActionKind::kReverse, stop->floor, stop->serve};
  }
  return {CarActionKind::kStopAt, stop->floor, stop->serve};
}

std::optional<double> MeasureWait(const Passenger& p) {
  if (!p.board_time) return std::nullopt;
  return *p.board_time - p.arrival_time;
}

}  // namespace elevsched
