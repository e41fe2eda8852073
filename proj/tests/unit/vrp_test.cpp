#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "model/errors.hpp"
#include "vrp/routing.hpp"
#include "test_support.hpp"

namespace irp::vrp {
namespace {

RoutingProblem twoStops(Quantity cap) {
  RoutingProblem p;
  p.depot = {0, 0};
  p.vehicleCap = cap;
  p.stops = {{1, 1, {0, 2}}, {2, 1, {2, 0}}};
  return p;
}

const double kTwoStopMerged = 4.0 + 2.0 * std::sqrt(2.0);

TEST(Savings, EmptyProblem) {
  RoutingProblem p;
  p.vehicleCap = 3;
  auto s = savingsConstruct(p);
  EXPECT_TRUE(s.routes.empty());
  EXPECT_EQ(s.totalDistance, 0.0);
}

TEST(Savings, MergesWhenCapacityAllows) {
  auto s = savingsConstruct(twoStops(2));
  ASSERT_EQ(s.routes.size(), 1u);
  EXPECT_NEAR(s.totalDistance, kTwoStopMerged, 1e-12);
  EXPECT_TRUE(isFeasible(twoStops(2), s));
}

TEST(Savings, CapacityForbidsMerge) {
  auto s = savingsConstruct(twoStops(1));
  EXPECT_EQ(s.routes.size(), 2u);
  EXPECT_NEAR(s.totalDistance, 8.0, 1e-12);
}

TEST(Savings, AlwaysFeasibleAndDeterministic) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    auto p = testing::randomRoutingProblem(rng, 1 + rep % 25, 20, 10);
    auto a = savingsConstruct(p);
    auto b = savingsConstruct(p);
    ASSERT_TRUE(isFeasible(p, a));
    EXPECT_EQ(a.totalDistance, b.totalDistance);
    double sum = 0.0;
    for (const auto& r : a.routes) {
      std::vector<int> order;
      for (int id : r.stopSequence) order.push_back(id - 1);
      EXPECT_NEAR(r.length, testing::tourLength(p, order), 1e-9);
      sum += r.length;
    }
    EXPECT_NEAR(sum, a.totalDistance, 1e-9);
  }
}

TEST(Oracle, SmallCases) {
  RoutingProblem one;
  one.depot = {0, 0};
  one.vehicleCap = 5;
  one.stops = {{7, 2, {3, 0}}};
  EXPECT_NEAR(bruteForceOracle(one).totalDistance, 6.0, 1e-12);
  EXPECT_NEAR(bruteForceOracle(twoStops(2)).totalDistance, kTwoStopMerged, 1e-12);
  EXPECT_NEAR(bruteForceOracle(twoStops(1)).totalDistance, 8.0, 1e-12);
}

TEST(Oracle, MatchesPartitionEnumeration) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 60; ++rep) {
    auto p = testing::randomRoutingProblem(rng, 1 + rep % 7, 10, 6);
    auto s = bruteForceOracle(p);
    ASSERT_TRUE(isFeasible(p, s));
    EXPECT_NEAR(s.totalDistance, testing::referenceOptimum(p), 1e-9);
  }
}

TEST(Oracle, RefusesLargeProblems) {
  std::mt19937_64 rng(1);
  auto p = testing::randomRoutingProblem(rng, static_cast<int>(kOracleMaxStops) + 1, 100, 1);
  EXPECT_THROW(bruteForceOracle(p), ContractError);
}

TEST(Rtr, SingleStopUnchanged) {
  RoutingProblem p;
  p.depot = {0, 0};
  p.vehicleCap = 5;
  p.stops = {{1, 2, {3, 4}}};
  auto start = savingsConstruct(p);
  auto out = rtrImprove(p, start, 1);
  EXPECT_EQ(out.totalDistance, start.totalDistance);
  ASSERT_EQ(out.routes.size(), 1u);
  EXPECT_EQ(out.routes[0].stopSequence, start.routes[0].stopSequence);
}

TEST(Rtr, SingleVehicleReachesPermutationOptimum) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    auto p = testing::randomRoutingProblem(rng, 5, 5, 1);
    for (auto& s : p.stops) s.load = 1;
    auto out = rtrImprove(p, savingsConstruct(p), rep);
    ASSERT_TRUE(isFeasible(p, out));
    EXPECT_NEAR(out.totalDistance, testing::bestTourByPermutation(p, {0, 1, 2, 3, 4}), 1e-9);
  }
}

TEST(Rtr, OptimalStartStaysOptimal) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 30; ++rep) {
    auto p = testing::randomRoutingProblem(rng, 6, 12, 6);
    auto opt = bruteForceOracle(p);
    auto out = rtrImprove(p, opt, rep);
    EXPECT_NEAR(out.totalDistance, opt.totalDistance, 1e-9);
  }
}

TEST(Rtr, NeverWorseThanStartAndFeasible) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 60; ++rep) {
    auto p = testing::randomRoutingProblem(rng, 2 + rep % 40, 30, 12);
    auto start = savingsConstruct(p);
    auto out = rtrImprove(p, start, rep);
    ASSERT_TRUE(isFeasible(p, out));
    EXPECT_LE(out.totalDistance, start.totalDistance + 1e-9);
    EXPECT_EQ(out.totalDistance, rtrImprove(p, start, rep).totalDistance);
  }
}

TEST(Rtr, RejectsInfeasibleStart) {
  auto p = twoStops(1);
  RoutingSolution merged = bruteForceOracle(twoStops(2));
  EXPECT_THROW(rtrImprove(p, merged, 1), ContractError);
}

TEST(Solve, DispatchesBySolver) {
  auto p = twoStops(2);
  for (auto s : {Solver::Savings, Solver::Rtr, Solver::Exact}) {
    EXPECT_NEAR(solve(p, s, 1).totalDistance, kTwoStopMerged, 1e-12) << toString(s);
    EXPECT_EQ(solverFromString(toString(s)), s);
  }
  EXPECT_THROW(solverFromString("tabu"), ContractError);
}

TEST(Problem, CheckRejectsMalformed) {
  auto p = twoStops(1);
  p.stops[1].id = 1;
  EXPECT_THROW(p.check(), ContractError);
  auto q = twoStops(1);
  q.stops[0].load = 2;
  EXPECT_THROW(q.check(), ContractError);
}

}  // namespace
}  // namespace irp::vrp
