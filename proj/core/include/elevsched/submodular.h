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

// Hall-call assignment as monotone submodular maximisation over a partition
// matroid.
//
// The ground set E holds one element (i, c) per call i and car c. For
// A subset of E:
//
//   h(A)  = -g(x_A)                               (negated waiting time)
//   h1(A) = -sum_i p_i (C - |A cap E_i|)          (under-assignment penalty)
//   f(A)  = h(A) + h1(A) + C sum_i p_i            (f(empty) = 0)
//
// Adding (i, c) changes h1 by exactly p_i, and p_i dominates every possible
// increase of g from adding (i, c), so f is nondecreasing. The partition
// matroid allows at most one car per call; greedy therefore returns a
// basis, i.e. a complete assignment, with f(greedy) >= f(OPT) / 2.

#ifndef ELEVSCHED_SUBMODULAR_H_
#define ELEVSCHED_SUBMODULAR_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "elevsched/waiting_model.h"

namespace elevsched {

struct GroundElement {
  int call = 0;  // index into the WeightSet, not the hall-call id
  int car = 0;
  auto operator<=>(const GroundElement&) const = default;
};

class AssignmentSet {
 public:
  AssignmentSet() = default;
  AssignmentSet(int num_calls, int num_cars)
      : num_calls_(num_calls),
        num_cars_(num_cars),
        member_(static_cast<size_t>(num_calls) * num_cars, 0) {}

  bool Contains(GroundElement e) const { return member_[Index(e)] != 0; }
  // Returns false if already present.
  bool Insert(GroundElement e);
  bool Erase(GroundElement e);
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int num_calls() const { return num_calls_; }
  int num_cars() const { return num_cars_; }

  // Elements ordered by (call, car).
  std::vector<GroundElement> Elements() const;
  // |A cap E_i|.
  int BlockCount(int call) const;
  // Car of `call` when exactly one is selected.
  std::optional<int> CarOf(int call) const;
  // The {0,1}^{N C} vector, x[i * C + c].
  const std::vector<char>& Indicator() const { return member_; }

  bool operator==(const AssignmentSet&) const = default;

 private:
  size_t Index(GroundElement e) const {
    return static_cast<size_t>(e.call) * num_cars_ + e.car;
  }

  int num_calls_ = 0;
  int num_cars_ = 0;
  int size_ = 0;
  std::vector<char> member_;
};

// Builds an assignment from a per-call car vector (car[i] = c).
AssignmentSet FromCarVector(const std::vector<int>& car, int num_cars);

class PartitionMatroid {
 public:
  // Blocks E_i = {(i, c) : c in cars}, each with capacity 1.
  PartitionMatroid(int num_calls, int num_cars)
      : num_calls_(num_calls), num_cars_(num_cars), capacity_(num_calls, 1) {}

  bool IsIndependent(const AssignmentSet& a) const;
  bool CanAdd(const AssignmentSet& a, GroundElement e) const;
  // Every block at capacity.
  bool IsBasis(const AssignmentSet& a) const;
  int BlockCapacity(int call) const { return capacity_[call]; }
  int num_calls() const { return num_calls_; }
  int num_cars() const { return num_cars_; }

 private:
  int num_calls_;
  int num_cars_;
  std::vector<int> capacity_;
};

class Objective {
 public:
  explicit Objective(WeightSet weights) : w_(std::move(weights)) {}

  const WeightSet& weights() const { return w_; }
  int num_calls() const { return w_.num_calls; }
  int num_cars() const { return w_.num_cars; }
  double PenaltySum() const;

  // Direct evaluation from the indicator vector; no caching. Sums are
  // accumulated in extended precision so that differences of f stay
  // accurate when capacity penalties make |f| large, and f(empty) == 0
  // holds exactly.
  double G(const AssignmentSet& a) const;
  double H(const AssignmentSet& a) const { return -G(a); }
  double H1(const AssignmentSet& a) const;
  double F(const AssignmentSet& a) const;

 private:
  long double GL(const AssignmentSet& a) const;
  long double H1L(const AssignmentSet& a) const;

  WeightSet w_;
};

struct GreedyOptions {
  // Elements that may not be selected, indexed call * C + car.
  std::vector<char> forbidden;
  // Elements selected before the first greedy step.
  std::vector<GroundElement> seed;
};

struct GreedyStats {
  long marginal_evaluations = 0;
  int steps = 0;
  std::vector<GroundElement> order;
};

// Repeatedly adds the feasible element of largest marginal gain until no
// feasible element is left; zero-gain elements are added. Ties go to the
// smaller hall-call id, then the smaller car index. Marginals are
// maintained incrementally from per-car pairwise sums.
AssignmentSet GreedyMaximize(const Objective& objective,
                             const PartitionMatroid& matroid,
                             const GreedyOptions& options = {},
                             GreedyStats* stats = nullptr);

// Priority-queue (lazy) variant; returns the same set as GreedyMaximize.
AssignmentSet LazyGreedyMaximize(const Objective& objective,
                                 const PartitionMatroid& matroid,
                                 GreedyStats* stats = nullptr);

// Complete assignment minimising g by enumerating all C^N bases; ties go to
// the lexicographically smallest car vector. Throws std::domain_error when
// C^N exceeds `budget`.
AssignmentSet BruteForceOptimal(const Objective& objective,
                                const PartitionMatroid& matroid,
                                long budget = 1'000'000);

struct SubmodularityReport {
  long trials = 0;
  long violations = 0;
  double max_violation = 0.0;  // largest f(A+e)-f(A) - (f(B+e)-f(B))
};

// Samples B subset A subset E and e not in A and checks diminishing returns
// of f within `tolerance`.
SubmodularityReport CheckSubmodular(const Objective& objective, long trials,
                                    std::uint64_t seed,
                                    double tolerance = 1e-9);

}  // namespace elevsched

#endif  // ELEVSCHED_SUBMODULAR_H_
