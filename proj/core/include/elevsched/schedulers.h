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

// Hall-call assignment policies.
//
//   submodular          greedy over the pairwise waiting model
//   submodular-lazy     same assignment, priority-queue greedy
//   submodular-nobonus  same without the coincident-stop bonus
//   submodular-ho       same plus higher-order terms for k = 4, 5
//   unary-only          greedy on unary weights only
//   eta                 sequential minimum estimated time of arrival
//   collective          nearest car in travel direction

#ifndef ELEVSCHED_SCHEDULERS_H_
#define ELEVSCHED_SCHEDULERS_H_

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "elevsched/simulation.h"
#include "elevsched/submodular.h"
#include "elevsched/waiting_model.h"

namespace elevsched {

enum class SchedulerKind { kSubmodular, kEta, kCollective, kFixed };

struct SchedulerSpec {
  std::string name;
  SchedulerKind kind = SchedulerKind::kSubmodular;
  WeightConfig weights;
  bool lazy = false;

  // Throws std::invalid_argument for an unknown name.
  static SchedulerSpec Preset(const std::string& name);
  static std::vector<std::string> PresetNames();
};

class SubmodularScheduler : public Scheduler {
 public:
  explicit SubmodularScheduler(std::string name, WeightConfig config = {},
                               bool lazy = false)
      : name_(std::move(name)), config_(std::move(config)), lazy_(lazy) {}

  std::string Name() const override { return name_; }
  std::map<int, int> Assign(const SchedulingContext& ctx) override;
  long penalty_raises() const override { return penalty_raises_; }

  const WeightBuildStats& last_build() const { return last_build_; }
  const GreedyStats& last_greedy() const { return last_greedy_; }

 private:
  std::string name_;
  WeightConfig config_;
  bool lazy_;
  long penalty_raises_ = 0;
  WeightBuildStats last_build_;
  GreedyStats last_greedy_;
};

// Calls in press-time order; each goes to the car with the smallest planned
// pickup time given the calls already placed on it this epoch.
class EtaScheduler : public Scheduler {
 public:
  std::string Name() const override { return "eta"; }
  std::map<int, int> Assign(const SchedulingContext& ctx) override;
};

// Each call goes to the car with the smallest travel distance to it along
// its current sweep.
class CollectiveScheduler : public Scheduler {
 public:
  std::string Name() const override { return "collective"; }
  std::map<int, int> Assign(const SchedulingContext& ctx) override;
};

// Assigns by (floor, direction) from a fixed table, falling back to car 0.
class FixedScheduler : public Scheduler {
 public:
  using Table = std::map<std::pair<int, int>, int>;  // (floor, dir) -> car
  explicit FixedScheduler(Table table) : table_(std::move(table)) {}
  std::string Name() const override { return "fixed"; }
  std::map<int, int> Assign(const SchedulingContext& ctx) override;

 private:
  Table table_;
};

// Sweep distance, in floors, for `car` to reach `call`.
double DirectionalDistance(const CarSnapshot& car, const HallCall& call,
                           const BuildingConfig& building);

std::unique_ptr<Scheduler> MakeScheduler(const SchedulerSpec& spec);
std::unique_ptr<Scheduler> MakeScheduler(const std::string& preset);

}  // namespace elevsched

#endif  // ELEVSCHED_SCHEDULERS_H_
