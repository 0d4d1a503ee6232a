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

#include <random>
#include <stdexcept>
#include <vector>

#include "elevsched/verification.h"
#include "elevsched/waiting_model.h"
#include "gtest/gtest.h"

namespace elevsched {
namespace {

// Unary {10, 20; 15, 15}, pairwise 8 on car 0 and 0 on car 1.
WeightSet TwoByTwo() {
  WeightSet w = WeightSet::Zero(2, 2);
  w.Unary(0, 0) = 10;
  w.Unary(0, 1) = 20;
  w.Unary(1, 0) = 15;
  w.Unary(1, 1) = 15;
  w.SetPairwise(0, 1, 0, 8);
  w.ComputePenalties();
  return w;
}

WeightSet RandomWeights(std::mt19937_64& rng, int n, int c) {
  std::uniform_real_distribution<double> u(0.0, 40.0);
  WeightSet w = WeightSet::Zero(n, c);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < c; ++k) w.Unary(i, k) = u(rng);
  }
  for (int k = 0; k < c; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) w.SetPairwise(i, j, k, u(rng));
    }
  }
  w.ComputePenalties();
  return w;
}

AssignmentSet RandomSubset(std::mt19937_64& rng, int n, int c) {
  AssignmentSet a(n, c);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < c; ++k) {
      if (rng() % 3 == 0) a.Insert({i, k});
    }
  }
  return a;
}

TEST(Objective, GOnTwoByTwo) {
  const Objective f(TwoByTwo());
  EXPECT_EQ(f.G(AssignmentSet(2, 2)), 0.0);
  EXPECT_EQ(f.G(FromCarVector({0, 0}, 2)), 33.0);
  EXPECT_EQ(f.G(FromCarVector({0, 1}, 2)), 25.0);
  EXPECT_EQ(f.H(FromCarVector({0, 0}, 2)), -33.0);
  EXPECT_EQ(f.H(AssignmentSet(2, 2)), 0.0);
}

TEST(Objective, HMarginalIdentity) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + rng() % 6;
    const int c = 1 + rng() % 4;
    const WeightSet w = RandomWeights(rng, n, c);
    const Objective f(w);
    AssignmentSet a = RandomSubset(rng, n, c);
    const GroundElement e{static_cast<int>(rng() % n),
                          static_cast<int>(rng() % c)};
    if (a.Contains(e)) continue;
    double expected = -w.Unary(e.call, e.car);
    for (const GroundElement& x : a.Elements()) {
      if (x.car == e.car && x.call != e.call) {
        expected -= w.Pairwise(e.call, x.call, e.car);
      }
    }
    AssignmentSet ae = a;
    ae.Insert(e);
    EXPECT_NEAR(f.H(ae) - f.H(a), expected, 1e-9);
  }
}

TEST(Objective, H1EmptyAndMarginal) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + rng() % 6;
    const int c = 1 + rng() % 4;
    const Objective f(RandomWeights(rng, n, c));
    EXPECT_DOUBLE_EQ(f.H1(AssignmentSet(n, c)), -c * f.PenaltySum());
    AssignmentSet a = RandomSubset(rng, n, c);
    const GroundElement e{static_cast<int>(rng() % n),
                          static_cast<int>(rng() % c)};
    if (a.Contains(e)) continue;
    AssignmentSet ae = a;
    ae.Insert(e);
    EXPECT_NEAR(f.H1(ae) - f.H1(a), f.weights().penalty[e.call], 1e-9);
  }
}

TEST(Objective, H1MarginalIsExactOnDyadicWeights) {
  WeightSet w = WeightSet::Zero(3, 2);
  w.Unary(0, 0) = 1.5;
  w.Unary(1, 1) = 2.25;
  w.Unary(2, 0) = 7.0;
  w.SetPairwise(0, 2, 0, 0.125);
  w.ComputePenalties();
  const Objective f(w);
  AssignmentSet a(3, 2);
  for (const GroundElement e : {GroundElement{1, 0}, GroundElement{0, 1},
                                GroundElement{1, 1}, GroundElement{2, 0}}) {
    const double before = f.H1(a);
    a.Insert(e);
    EXPECT_EQ(f.H1(a) - before, w.penalty[e.call]);
  }
}

TEST(Objective, CompleteAssignments) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + rng() % 6;
    const int c = 1 + rng() % 4;
    const Objective f(RandomWeights(rng, n, c));
    std::vector<int> car(n);
    for (int& k : car) k = rng() % c;
    const AssignmentSet a = FromCarVector(car, c);
    EXPECT_NEAR(f.H1(a), -(c - 1) * f.PenaltySum(), 1e-9);
    EXPECT_NEAR(f.F(a), f.H(a) + f.PenaltySum(), 1e-9);
  }
}

TEST(Objective, EmptySetIsExactlyZero) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + rng() % 8;
    const int c = 1 + rng() % 6;
    WeightSet w = RandomWeights(rng, n, c);
    // Large unary entries, as a capacity penalty would produce.
    for (int i = 0; i < n; ++i) w.Unary(i, 0) += 1e4 + 0.1 * i;
    w.ComputePenalties();
    EXPECT_EQ(Objective(w).F(AssignmentSet(n, c)), 0.0);
  }
}

TEST(PartitionMatroid, Independence) {
  const PartitionMatroid m(2, 2);
  AssignmentSet a(2, 2);
  EXPECT_TRUE(m.IsIndependent(a));
  a.Insert({0, 0});
  a.Insert({0, 1});
  EXPECT_FALSE(m.IsIndependent(a));
  EXPECT_FALSE(m.CanAdd(FromCarVector({0, 1}, 2), {0, 1}));
  EXPECT_TRUE(m.IsBasis(FromCarVector({1, 0}, 2)));
  AssignmentSet partial(2, 2);
  partial.Insert({1, 1});
  EXPECT_FALSE(m.IsBasis(partial));
}

TEST(PartitionMatroid, DownwardClosedOnSmallGroundSet) {
  const int n = 3;
  const int c = 2;
  const PartitionMatroid m(n, c);
  const int size = n * c;
  for (int mask = 0; mask < (1 << size); ++mask) {
    AssignmentSet a(n, c);
    for (int b = 0; b < size; ++b) {
      if (mask >> b & 1) a.Insert({b / c, b % c});
    }
    if (!m.IsIndependent(a)) continue;
    for (int sub = mask; sub > 0; sub = (sub - 1) & mask) {
      AssignmentSet s(n, c);
      for (int b = 0; b < size; ++b) {
        if (sub >> b & 1) s.Insert({b / c, b % c});
      }
      EXPECT_TRUE(m.IsIndependent(s));
    }
  }
}

TEST(Greedy, SingleCallPicksSmallerUnary) {
  WeightSet w = WeightSet::Zero(1, 2);
  w.Unary(0, 0) = 5;
  w.Unary(0, 1) = 10;
  w.ComputePenalties();
  const AssignmentSet s = GreedyMaximize(Objective(w), PartitionMatroid(1, 2));
  EXPECT_EQ(s, FromCarVector({0}, 2));
}

TEST(Greedy, HandTracedTwoByTwo) {
  const Objective f(TwoByTwo());
  const PartitionMatroid m(2, 2);
  GreedyStats stats;
  const AssignmentSet s = GreedyMaximize(f, m, {}, &stats);
  ASSERT_EQ(stats.order.size(), 2u);
  EXPECT_EQ(stats.order[0], (GroundElement{0, 0}));  // gain 20 - 10
  EXPECT_EQ(stats.order[1], (GroundElement{1, 1}));  // gain 23 - 15
  EXPECT_EQ(f.G(s), 25.0);
  EXPECT_EQ(s, BruteForceOptimal(f, m));
}

TEST(Greedy, TieBreakSmallerCallThenSmallerCar) {
  const WeightSet w = WeightSet::Zero(3, 3);  // every gain is zero
  GreedyStats stats;
  const AssignmentSet s =
      GreedyMaximize(Objective(w), PartitionMatroid(3, 3), {}, &stats);
  EXPECT_EQ(s, FromCarVector({0, 0, 0}, 3));
  EXPECT_EQ(stats.order[0], (GroundElement{0, 0}));
  EXPECT_EQ(stats.order[2], (GroundElement{2, 0}));
}

TEST(Greedy, EachStepTakesTheBestFullyEvaluatedMarginal) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + rng() % 7;
    const int c = 1 + rng() % 4;
    WeightSet w = RandomWeights(rng, n, c);
    if (t % 2) {
      const std::vector<std::pair<int, double>> ho{{3, 4.0}};
      w.higher_order = MakeHigherOrderTerms(ho);
      w.ComputePenalties();
    }
    const Objective f(w);
    const PartitionMatroid m(n, c);
    GreedyStats stats;
    GreedyMaximize(f, m, {}, &stats);
    AssignmentSet s(n, c);
    for (const GroundElement& chosen : stats.order) {
      double best = -1e300;
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < c; ++k) {
          if (!m.CanAdd(s, {i, k})) continue;
          AssignmentSet x = s;
          x.Insert({i, k});
          best = std::max(best, f.F(x) - f.F(s));
        }
      }
      AssignmentSet x = s;
      x.Insert(chosen);
      EXPECT_NEAR(f.F(x) - f.F(s), best, 1e-9);
      s = x;
    }
  }
}

TEST(Greedy, AlwaysBasisAndLazyIdentical) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    const SystemState st = RandomSystemState(rng, {});
    WeightConfig cfg;
    if (t % 3 == 0) cfg.higher_order = {{4, 5.0}, {5, 5.0}};
    const Objective f(BuildWeights(
        st.cars, st.calls, DestinationDistribution::Uniform(st.building.floors),
        st.building, cfg));
    const PartitionMatroid m(f.num_calls(), f.num_cars());
    const AssignmentSet g = GreedyMaximize(f, m);
    EXPECT_TRUE(m.IsBasis(g));
    EXPECT_EQ(LazyGreedyMaximize(f, m), g);
  }
}

TEST(Greedy, EvaluationCountIsQuadraticInCalls) {
  std::mt19937_64 rng(7);
  const int n = 8;
  const int c = 6;
  const Objective f(RandomWeights(rng, n, c));
  GreedyStats stats;
  GreedyMaximize(f, PartitionMatroid(n, c), {}, &stats);
  EXPECT_EQ(stats.steps, n);
  EXPECT_LE(stats.marginal_evaluations, static_cast<long>(n) * n * c);
}

TEST(Greedy, SeedAndForbiddenAreHonoured) {
  const Objective f(TwoByTwo());
  GreedyOptions options;
  options.forbidden.assign(4, 0);
  options.forbidden[0 * 2 + 0] = 1;  // call 0 may not use car 0
  options.seed = {{1, 0}};
  const AssignmentSet s = GreedyMaximize(f, PartitionMatroid(2, 2), options);
  EXPECT_EQ(s, FromCarVector({1, 0}, 2));
}

TEST(Greedy, HalfBoundOnSmallInstances) {
  PropertyReport basis;
  const PropertyReport r = CheckGreedyBound(200, 99, &basis);
  EXPECT_EQ(r.cases, 200);
  EXPECT_EQ(r.violations, 0);
  EXPECT_EQ(basis.violations, 0);
}

TEST(BruteForce, SingleCallAndBudget) {
  WeightSet w = WeightSet::Zero(1, 3);
  w.Unary(0, 0) = 9;
  w.Unary(0, 1) = 4;
  w.Unary(0, 2) = 4;
  w.ComputePenalties();
  // Ties resolve to the lexicographically smallest car vector.
  EXPECT_EQ(BruteForceOptimal(Objective(w), PartitionMatroid(1, 3)),
            FromCarVector({1}, 3));
  const Objective big(WeightSet::Zero(13, 3));  // 3^13 > 1e6
  EXPECT_THROW(BruteForceOptimal(big, PartitionMatroid(13, 3)),
               std::domain_error);
}

TEST(BruteForce, AgreesWithGreedyWhenGreedyIsOptimal) {
  std::mt19937_64 rng(8);
  int agreed = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + rng() % 5;
    const int c = 1 + rng() % 3;
    const Objective f(RandomWeights(rng, n, c));
    const PartitionMatroid m(n, c);
    const AssignmentSet opt = BruteForceOptimal(f, m);
    const AssignmentSet g = GreedyMaximize(f, m);
    EXPECT_LE(f.G(opt), f.G(g) + 1e-9);
    if (f.G(g) == f.G(opt)) ++agreed;
  }
  EXPECT_GT(agreed, 0);
}

TEST(CheckSubmodular, BuiltWeightsHaveNoViolations) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const SystemState st = RandomSystemState(rng, {});
    const Objective f(BuildWeights(
        st.cars, st.calls, DestinationDistribution::Uniform(st.building.floors),
        st.building, {}));
    const SubmodularityReport r = CheckSubmodular(f, 200, rng());
    EXPECT_EQ(r.violations, 0);
  }
}

TEST(CheckSubmodular, NegativePairwiseIsDetected) {
  WeightSet w = WeightSet::Zero(3, 2);
  for (int i = 0; i < 3; ++i) w.Unary(i, 0) = w.Unary(i, 1) = 10;
  w.pairwise[(0 * 3 + 0) * 3 + 1] = w.pairwise[(0 * 3 + 1) * 3 + 0] = -6;
  w.pairwise[(0 * 3 + 1) * 3 + 2] = w.pairwise[(0 * 3 + 2) * 3 + 1] = -6;
  w.ComputePenalties();
  const SubmodularityReport r = CheckSubmodular(Objective(w), 2000, 1);
  EXPECT_GT(r.violations, 0);
}

TEST(CheckSubmodular, EqualSetsGiveEqualGains) {
  std::mt19937_64 rng(10);
  const Objective f(RandomWeights(rng, 5, 3));
  for (int t = 0; t < 100; ++t) {
    const AssignmentSet a = RandomSubset(rng, 5, 3);
    const GroundElement e{static_cast<int>(rng() % 5),
                          static_cast<int>(rng() % 3)};
    if (a.Contains(e)) continue;
    AssignmentSet ae = a;
    ae.Insert(e);
    const AssignmentSet b = a;
    AssignmentSet be = b;
    be.Insert(e);
    EXPECT_EQ(f.F(ae) - f.F(a), f.F(be) - f.F(b));
  }
}

TEST(Monotone, RandomChainsNeverDecrease) {
  const PropertyReport r = CheckMonotoneChains(200, 12);
  EXPECT_EQ(r.violations, 0);
}

}  // namespace
}  // namespace elevsched
