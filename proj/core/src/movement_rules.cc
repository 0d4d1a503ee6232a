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

#include "elevsched/movement_rules.h"

#include <cstdlib>
#include <tuple>

namespace elevsched {
namespace {

bool AtOrAhead(int floor, int ref, Direction d) {
  return d == Direction::kUp ? floor >= ref : floor <= ref;
}

bool HasHall(std::span<const StopRequest> halls, int floor, Direction d) {
  for (const StopRequest& h : halls) {
    if (h.floor == floor && h.dir == d) return true;
  }
  return false;
}

std::optional<Stop> LoadedNextStop(const RuleInput& in) {
  Direction d = in.direction;
  if (d == Direction::kIdle) {
    int nearest = in.car_calls.front();
    for (int c : in.car_calls) {
      if (std::abs(c - in.floor) < std::abs(nearest - in.floor)) nearest = c;
    }
    d = Toward(in.floor, nearest);
    if (d == Direction::kIdle) return Stop{in.floor, Direction::kIdle};
  }
  // A consistent state always has a car call ahead; the second pass only
  // guards against inconsistent input by reversing.
  for (int pass = 0; pass < 2; ++pass) {
    std::optional<int> best;
    const auto consider = [&](int floor) {
      if (!AtOrAhead(floor, in.floor, d)) return;
      if (!best || std::abs(floor - in.floor) < std::abs(*best - in.floor)) {
        best = floor;
      }
    };
    for (int c : in.car_calls) consider(c);
    if (!in.full) {
      for (const StopRequest& h : in.hall_calls) {
        if (h.dir == d) consider(h.floor);
      }
    }
    if (best) {
      const bool board = !in.full && HasHall(in.hall_calls, *best, d);
      return Stop{*best, board ? d : Direction::kIdle};
    }
    d = Opposite(d);
  }
  return std::nullopt;
}

std::optional<Stop> EmptyNextStop(const RuleInput& in) {
  if (in.hall_calls.empty()) return std::nullopt;
  Direction d = in.direction;
  if (d == Direction::kIdle) {
    const StopRequest* nearest = &in.hall_calls.front();
    for (const StopRequest& h : in.hall_calls) {
      if (std::make_tuple(std::abs(h.floor - in.floor), h.press_time, h.id) <
          std::make_tuple(std::abs(nearest->floor - in.floor),
                          nearest->press_time, nearest->id)) {
        nearest = &h;
      }
    }
    d = nearest->floor == in.floor ? nearest->dir
                                   : Toward(in.floor, nearest->floor);
  }

  // Rule 1: same-direction calls at or ahead of the car.
  const StopRequest* pick = nullptr;
  for (const StopRequest& h : in.hall_calls) {
    if (h.dir != d || !AtOrAhead(h.floor, in.floor, d)) continue;
    if (pick == nullptr ||
        std::abs(h.floor - in.floor) < std::abs(pick->floor - in.floor)) {
      pick = &h;
    }
  }
  if (pick != nullptr) return Stop{pick->floor, pick->dir};

  // Rule 2: the extreme opposite-direction call (highest down call when
  // going up, lowest up call when going down).
  const Direction opposite = Opposite(d);
  for (const StopRequest& h : in.hall_calls) {
    if (h.dir != opposite) continue;
    if (pick == nullptr ||
        (d == Direction::kUp ? h.floor > pick->floor : h.floor < pick->floor)) {
      pick = &h;
    }
  }
  if (pick != nullptr) return Stop{pick->floor, pick->dir};

  // Rule 3: only same-direction calls behind the car remain; sweep to the
  // farthest one (lowest up call when going up, highest down call when
  // going down).
  for (const StopRequest& h : in.hall_calls) {
    if (pick == nullptr ||
        (d == Direction::kUp ? h.floor < pick->floor : h.floor > pick->floor)) {
      pick = &h;
    }
  }
  return Stop{pick->floor, pick->dir};
}

}  // namespace

std::optional<Stop> NextStop(const RuleInput& in) {
  if (!in.car_calls.empty()) return LoadedNextStop(in);
  if (in.full) return std::nullopt;
  return EmptyNextStop(in);
}

std::optional<Direction> BoardingDirection(const RuleInput& in) {
  const std::optional<Stop> stop = NextStop(in);
  if (!stop || stop->floor != in.floor || stop->serve == Direction::kIdle) {
    return std::nullopt;
  }
  return stop->serve;
}

Direction DepartureDirection(int from, const Stop& stop) {
  const Direction d = Toward(from, stop.floor);
  return d == Direction::kIdle ? stop.serve : d;
}

}  // namespace elevsched
