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

#include "elevsched/submodular.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>

namespace elevsched {
namespace {

struct Candidate {
  double gain = -std::numeric_limits<double>::infinity();
  int call_id = 0;
  GroundElement element;
};

// Strict "a is preferred over b" under the greedy tie-break.
bool Better(const Candidate& a, const Candidate& b) {
  if (a.gain != b.gain) return a.gain > b.gain;
  if (a.call_id != b.call_id) return a.call_id < b.call_id;
  return a.element.car < b.element.car;
}

// Incremental marginal gains of f.
class MarginalCache {
 public:
  explicit MarginalCache(const Objective& objective)
      : w_(objective.weights()),
        pair_sum_(static_cast<size_t>(w_.num_cars) * w_.num_calls, 0.0),
        count_(w_.num_cars, 0),
        set_(w_.num_calls, w_.num_cars) {}

  double Gain(GroundElement e) const {
    const int m = count_[e.car];
    return w_.penalty[e.call] - w_.Unary(e.call, e.car) -
           pair_sum_[e.car * w_.num_calls + e.call] -
           (HigherOrderPenalty(w_.higher_order, m + 1) -
            HigherOrderPenalty(w_.higher_order, m));
  }

  void Add(GroundElement e) {
    set_.Insert(e);
    ++count_[e.car];
    for (int j = 0; j < w_.num_calls; ++j) {
      pair_sum_[e.car * w_.num_calls + j] += w_.Pairwise(e.call, j, e.car);
    }
  }

  const AssignmentSet& set() const { return set_; }

 private:
  const WeightSet& w_;
  std::vector<double> pair_sum_;
  std::vector<int> count_;
  AssignmentSet set_;
};

}  // namespace

bool AssignmentSet::Insert(GroundElement e) {
  char& slot = member_[Index(e)];
  if (slot) return false;
  slot = 1;
  ++size_;
  return true;
}

bool AssignmentSet::Erase(GroundElement e) {
  char& slot = member_[Index(e)];
  if (!slot) return false;
  slot = 0;
  --size_;
  return true;
}

std::vector<GroundElement> AssignmentSet::Elements() const {
  std::vector<GroundElement> out;
  out.reserve(size_);
  for (int i = 0; i < num_calls_; ++i) {
    for (int c = 0; c < num_cars_; ++c) {
      if (Contains({i, c})) out.push_back({i, c});
    }
  }
  return out;
}

int AssignmentSet::BlockCount(int call) const {
  int n = 0;
  for (int c = 0; c < num_cars_; ++c) n += Contains({call, c}) ? 1 : 0;
  return n;
}

std::optional<int> AssignmentSet::CarOf(int call) const {
  std::optional<int> car;
  for (int c = 0; c < num_cars_; ++c) {
    if (!Contains({call, c})) continue;
    if (car) return std::nullopt;
    car = c;
  }
  return car;
}

AssignmentSet FromCarVector(const std::vector<int>& car, int num_cars) {
  AssignmentSet a(static_cast<int>(car.size()), num_cars);
  for (size_t i = 0; i < car.size(); ++i) {
    a.Insert({static_cast<int>(i), car[i]});
  }
  return a;
}

bool PartitionMatroid::IsIndependent(const AssignmentSet& a) const {
  for (int i = 0; i < num_calls_; ++i) {
    if (a.BlockCount(i) > capacity_[i]) return false;
  }
  return true;
}

bool PartitionMatroid::CanAdd(const AssignmentSet& a, GroundElement e) const {
  return !a.Contains(e) && a.BlockCount(e.call) + 1 <= capacity_[e.call];
}

bool PartitionMatroid::IsBasis(const AssignmentSet& a) const {
  for (int i = 0; i < num_calls_; ++i) {
    if (a.BlockCount(i) != capacity_[i]) return false;
  }
  return true;
}

double Objective::PenaltySum() const {
  double s = 0.0;
  for (double p : w_.penalty) s += p;
  return s;
}

long double Objective::GL(const AssignmentSet& a) const {
  const int n = w_.num_calls;
  const int cars = w_.num_cars;
  long double g = 0.0L;
  for (int c = 0; c < cars; ++c) {
    int m = 0;
    for (int i = 0; i < n; ++i) {
      if (!a.Contains({i, c})) continue;
      ++m;
      g += w_.Unary(i, c);
      for (int j = i + 1; j < n; ++j) {
        if (a.Contains({j, c})) g += w_.Pairwise(i, j, c);
      }
    }
    g += HigherOrderPenalty(w_.higher_order, m);
  }
  return g;
}

long double Objective::H1L(const AssignmentSet& a) const {
  long double total = 0.0L;
  for (int i = 0; i < w_.num_calls; ++i) {
    total += static_cast<long double>(w_.penalty[i]) *
             (w_.num_cars - a.BlockCount(i));
  }
  return -total;
}

double Objective::G(const AssignmentSet& a) const {
  return static_cast<double>(GL(a));
}

double Objective::H1(const AssignmentSet& a) const {
  return static_cast<double>(H1L(a));
}

double Objective::F(const AssignmentSet& a) const {
  // The offset is C sum_i p_i, i.e. -h1(empty), summed in the same order.
  const long double offset = -H1L(AssignmentSet(w_.num_calls, w_.num_cars));
  return static_cast<double>(-GL(a) + H1L(a) + offset);
}

AssignmentSet GreedyMaximize(const Objective& objective,
                             const PartitionMatroid& matroid,
                             const GreedyOptions& options, GreedyStats* stats) {
  const WeightSet& w = objective.weights();
  MarginalCache cache(objective);
  GreedyStats local;
  for (const GroundElement& e : options.seed) {
    if (!matroid.CanAdd(cache.set(), e)) {
      throw std::domain_error("greedy seed is not independent");
    }
    cache.Add(e);
  }
  const auto allowed = [&](GroundElement e) {
    return options.forbidden.empty() ||
           !options.forbidden[static_cast<size_t>(e.call) * w.num_cars + e.car];
  };
  while (true) {
    std::optional<Candidate> best;
    for (int i = 0; i < w.num_calls; ++i) {
      if (cache.set().BlockCount(i) >= matroid.BlockCapacity(i)) continue;
      for (int c = 0; c < w.num_cars; ++c) {
        const GroundElement e{i, c};
        if (!allowed(e)) continue;
        const Candidate cand{cache.Gain(e), w.call_ids[i], e};
        ++local.marginal_evaluations;
        if (!best || Better(cand, *best)) best = cand;
      }
    }
    if (!best) break;
    cache.Add(best->element);
    local.order.push_back(best->element);
    ++local.steps;
  }
  if (stats != nullptr) *stats = std::move(local);
  return cache.set();
}

AssignmentSet LazyGreedyMaximize(const Objective& objective,
                                 const PartitionMatroid& matroid,
                                 GreedyStats* stats) {
  const WeightSet& w = objective.weights();
  MarginalCache cache(objective);
  GreedyStats local;
  const auto worse = [](const Candidate& a, const Candidate& b) {
    return Better(b, a);
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse)> queue(
      worse);
  for (int i = 0; i < w.num_calls; ++i) {
    for (int c = 0; c < w.num_cars; ++c) {
      queue.push({cache.Gain({i, c}), w.call_ids[i], {i, c}});
      ++local.marginal_evaluations;
    }
  }
  while (!queue.empty()) {
    Candidate top = queue.top();
    queue.pop();
    if (!matroid.CanAdd(cache.set(), top.element)) continue;
    top.gain = cache.Gain(top.element);
    ++local.marginal_evaluations;
    // Stale gains upper-bound fresh ones, so a fresh candidate that beats
    // every stale bound is the true argmax.
    if (queue.empty() || !Better(queue.top(), top)) {
      cache.Add(top.element);
      local.order.push_back(top.element);
      ++local.steps;
    } else {
      queue.push(top);
    }
  }
  if (stats != nullptr) *stats = std::move(local);
  return cache.set();
}

AssignmentSet BruteForceOptimal(const Objective& objective,
                                const PartitionMatroid& matroid, long budget) {
  const int n = objective.num_calls();
  const int cars = objective.num_cars();
  double total = 1.0;
  for (int i = 0; i < n; ++i) total *= cars;
  if (total > static_cast<double>(budget)) {
    throw std::domain_error("brute force enumeration exceeds budget");
  }
  std::vector<int> car(n, 0);
  std::vector<int> best_car;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    const AssignmentSet a = FromCarVector(car, cars);
    if (matroid.IsIndependent(a)) {
      const double g = objective.G(a);
      if (g < best) {
        best = g;
        best_car = car;
      }
    }
    int pos = n - 1;
    while (pos >= 0 && ++car[pos] == cars) car[pos--] = 0;
    if (pos < 0) break;
  }
  return FromCarVector(best_car, cars);
}

SubmodularityReport CheckSubmodular(const Objective& objective, long trials,
                                    std::uint64_t seed, double tolerance) {
  const int n = objective.num_calls();
  const int cars = objective.num_cars();
  const int size = n * cars;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SubmodularityReport report;
  for (long t = 0; t < trials; ++t) {
    AssignmentSet a(n, cars);
    AssignmentSet b(n, cars);
    const double density = unit(rng);
    std::vector<GroundElement> outside;
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < cars; ++c) {
        if (unit(rng) < density) {
          a.Insert({i, c});
          if (unit(rng) < 0.5) b.Insert({i, c});
        } else {
          outside.push_back({i, c});
        }
      }
    }
    if (outside.empty() || size == 0) continue;
    const GroundElement e = outside[std::uniform_int_distribution<size_t>(
        0, outside.size() - 1)(rng)];
    AssignmentSet ae = a;
    ae.Insert(e);
    AssignmentSet be = b;
    be.Insert(e);
    const double gain_a = objective.F(ae) - objective.F(a);
    const double gain_b = objective.F(be) - objective.F(b);
    ++report.trials;
    const double excess = gain_a - gain_b;
    report.max_violation = std::max(report.max_violation, excess);
    if (excess > tolerance) ++report.violations;
  }
  return report;
}

}  // namespace elevsched
