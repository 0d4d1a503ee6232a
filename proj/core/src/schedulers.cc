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

#include "elevsched/schedulers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace elevsched {
namespace {

bool CarFull(const CarSnapshot& car) { return car.load >= car.capacity; }

// Cars worth considering: every non-full car, or all cars if all are full.
std::vector<int> CandidateCars(std::span<const CarSnapshot> cars) {
  std::vector<int> out;
  for (size_t c = 0; c < cars.size(); ++c) {
    if (!CarFull(cars[c])) out.push_back(static_cast<int>(c));
  }
  if (out.empty()) {
    for (size_t c = 0; c < cars.size(); ++c) out.push_back(static_cast<int>(c));
  }
  return out;
}

void CheckContext(const SchedulingContext& ctx) {
  if (ctx.building == nullptr || ctx.destinations == nullptr ||
      ctx.cars.empty()) {
    throw std::invalid_argument("incomplete scheduling context");
  }
}

}  // namespace

SchedulerSpec SchedulerSpec::Preset(const std::string& name) {
  SchedulerSpec s;
  s.name = name;
  if (name == "submodular") return s;
  if (name == "submodular-lazy") {
    s.lazy = true;
    return s;
  }
  if (name == "submodular-nobonus") {
    s.weights.coincident_bonus = false;
    return s;
  }
  if (name == "submodular-ho") {
    s.weights.higher_order = {{4, 5.0}, {5, 5.0}};
    return s;
  }
  if (name == "unary-only") {
    s.weights.pairwise = false;
    return s;
  }
  if (name == "eta") {
    s.kind = SchedulerKind::kEta;
    return s;
  }
  if (name == "collective") {
    s.kind = SchedulerKind::kCollective;
    return s;
  }
  throw std::invalid_argument("unknown scheduler '" + name + "'");
}

std::vector<std::string> SchedulerSpec::PresetNames() {
  return {"submodular",    "submodular-lazy", "submodular-nobonus",
          "submodular-ho", "unary-only",      "eta",
          "collective"};
}

std::map<int, int> SubmodularScheduler::Assign(const SchedulingContext& ctx) {
  CheckContext(ctx);
  std::map<int, int> out;
  if (ctx.calls.empty()) return out;
  const int cars = static_cast<int>(ctx.cars.size());
  WeightSet weights = BuildWeights(ctx.cars, ctx.calls, *ctx.destinations,
                                   *ctx.building, config_, &last_build_);
  if (last_build_.penalty_raised) ++penalty_raises_;
  const int n = weights.num_calls;
  const Objective objective(std::move(weights));
  const PartitionMatroid matroid(n, cars);
  AssignmentSet chosen =
      lazy_ ? LazyGreedyMaximize(objective, matroid, &last_greedy_)
            : GreedyMaximize(objective, matroid, {}, &last_greedy_);

  // Calls landing on a full car are re-placed among the others, keeping
  // every other choice as a seed.
  std::vector<char> full(cars, 0);
  bool any_open = false;
  for (int c = 0; c < cars; ++c) {
    full[c] = CapacityPenalty(ctx.cars[c], config_) > 0.0;
    any_open = any_open || !full[c];
  }
  bool hit = false;
  for (const GroundElement& e : chosen.Elements()) hit = hit || full[e.car];
  if (hit && any_open) {
    GreedyOptions options;
    options.forbidden.assign(static_cast<size_t>(n) * cars, 0);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < cars; ++c) {
        options.forbidden[static_cast<size_t>(i) * cars + c] = full[c];
      }
    }
    for (const GroundElement& e : chosen.Elements()) {
      if (!full[e.car]) options.seed.push_back(e);
    }
    chosen = GreedyMaximize(objective, matroid, options, &last_greedy_);
  }
  const WeightSet& w = objective.weights();
  for (const GroundElement& e : chosen.Elements()) {
    out[w.call_ids[e.call]] = e.car;
  }
  return out;
}

std::map<int, int> EtaScheduler::Assign(const SchedulingContext& ctx) {
  CheckContext(ctx);
  std::vector<HallCall> calls(ctx.calls.begin(), ctx.calls.end());
  std::stable_sort(
      calls.begin(), calls.end(), [](const HallCall& a, const HallCall& b) {
        return std::tie(a.press_time, a.id) < std::tie(b.press_time, b.id);
      });
  std::vector<CarSnapshot> cars(ctx.cars.begin(), ctx.cars.end());
  const std::vector<int> candidates = CandidateCars(ctx.cars);
  std::map<int, int> out;
  for (const HallCall& call : calls) {
    int best = candidates.front();
    double best_eta = std::numeric_limits<double>::infinity();
    for (int c : candidates) {
      const double eta = UnaryWeight(cars[c], call, *ctx.building);
      if (eta < best_eta) {
        best_eta = eta;
        best = c;
      }
    }
    out[call.id] = best;
    cars[best].locked_stops.push_back(call.AsStop());
  }
  return out;
}

double DirectionalDistance(const CarSnapshot& car, const HallCall& call,
                           const BuildingConfig& building) {
  const double p = car.kinematic.position / building.floor_height;
  const double f = call.floor;
  Direction d = car.committed_direction;
  if (std::abs(car.kinematic.velocity) > 1e-9) {
    d = car.kinematic.velocity > 0.0 ? Direction::kUp : Direction::kDown;
  }
  if (d == Direction::kIdle) return std::abs(f - p);
  // Mirror a downward sweep so that the car always moves up.
  const double s = Sign(d);
  const double pos = s * p;
  const double target = s * f;
  double top = pos;
  double bottom = pos;
  for (int c : car.car_calls) {
    top = std::max(top, s * c);
    bottom = std::min(bottom, s * c);
  }
  for (const StopRequest& r : car.locked_stops) {
    top = std::max(top, s * r.floor);
    bottom = std::min(bottom, s * r.floor);
  }
  if (call.direction == d && target >= pos) return target - pos;
  if (call.direction != d) {
    top = std::max(top, target);
    return (top - pos) + (top - target);
  }
  bottom = std::min(bottom, target);
  return (top - pos) + (top - bottom) + (target - bottom);
}

std::map<int, int> CollectiveScheduler::Assign(const SchedulingContext& ctx) {
  CheckContext(ctx);
  const std::vector<int> candidates = CandidateCars(ctx.cars);
  std::map<int, int> out;
  for (const HallCall& call : ctx.calls) {
    int best = candidates.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (int c : candidates) {
      const double d = DirectionalDistance(ctx.cars[c], call, *ctx.building);
      if (d < best_d - 1e-12) {
        best_d = d;
        best = c;
      }
    }
    out[call.id] = best;
  }
  return out;
}

std::map<int, int> FixedScheduler::Assign(const SchedulingContext& ctx) {
  std::map<int, int> out;
  for (const HallCall& call : ctx.calls) {
    const auto it = table_.find({call.floor, Sign(call.direction)});
    out[call.id] = it == table_.end() ? 0 : it->second;
  }
  return out;
}

std::unique_ptr<Scheduler> MakeScheduler(const SchedulerSpec& spec) {
  switch (spec.kind) {
    case SchedulerKind::kSubmodular:
      return std::make_unique<SubmodularScheduler>(spec.name, spec.weights,
                                                   spec.lazy);
    case SchedulerKind::kEta:
      return std::make_unique<EtaScheduler>();
    case SchedulerKind::kCollective:
      return std::make_unique<CollectiveScheduler>();
    case SchedulerKind::kFixed:
      return std::make_unique<FixedScheduler>(FixedScheduler::Table{});
  }
  throw std::invalid_argument("unknown scheduler kind");
}

std::unique_ptr<Scheduler> MakeScheduler(const std::string& preset) {
  return MakeScheduler(SchedulerSpec::Preset(preset));
}

}  // namespace elevsched
