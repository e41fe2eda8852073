#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <set>

#include "benchgen/benchgen.hpp"
#include "model/errors.hpp"
#include "model/evaluate.hpp"
#include "pareto/archive.hpp"
#include "search/enumerate.hpp"
#include "search/search.hpp"
#include "test_support.hpp"

namespace irp::search {
namespace {

using testing::CustomerSpec;
using testing::makeInstance;

std::shared_ptr<const Instance> shared(Instance inst) {
  return std::make_shared<const Instance>(std::move(inst));
}

std::shared_ptr<const Instance> generated(int n, int T, std::uint64_t seed,
                                          bench::Scenario kind = bench::Scenario::Constant) {
  bench::ScenarioSpec spec;
  spec.kind = kind;
  spec.horizon = T;
  spec.seed = seed;
  return shared(bench::generateInstance(testing::randomGeometry(seed, n), spec, 120));
}

void expectMutuallyNondominated(const pareto::Archive& a) {
  for (const auto& x : a.entries()) {
    for (const auto& y : a.entries()) {
      if (x.id == y.id) continue;
      EXPECT_FALSE(pareto::dominates(x.objectives, y.objectives));
      EXPECT_NE(x.objectives, y.objectives);
    }
  }
}

TEST(Neighborhood, Examples) {
  EXPECT_EQ(neighborhood(FrequencyVector{2, 1}, 3),
            (std::vector<FrequencyVector>{{3, 1}, {1, 1}, {2, 2}}));
  EXPECT_EQ(neighborhood(FrequencyVector{1, 1}, 2), (std::vector<FrequencyVector>{{2, 1}, {1, 2}}));
  EXPECT_EQ(neighborhood(FrequencyVector{5}, 5), (std::vector<FrequencyVector>{{4}}));
  EXPECT_TRUE(neighborhood(FrequencyVector{1, 1}, 1).empty());
}

TEST(Config, Validation) {
  SearchConfig cfg;
  EXPECT_NO_THROW(cfg.check());
  cfg.refPointCount = 4;
  EXPECT_THROW(cfg.check(), ContractError);
  cfg.refPointCount = 5;
  cfg.mixedSamples = -1;
  EXPECT_THROW(cfg.check(), ContractError);
  cfg.mixedSamples = 0;
  cfg.userRefPoints = {{2, 0}};
  EXPECT_THROW(cfg.check(), ContractError);
  cfg.userRefPoints = {{0.3, 0.3}};
  EXPECT_EQ(cfg.referencePoints().count(), 3u);
}

TEST(Search, RejectsInvalidInstanceBeforeEvaluating) {
  auto bad = makeInstance(2, {{1, 0, {3}, 10, 0}});
  EXPECT_THROW(Search(shared(bad), SearchConfig{}), ValidationError);
}

TEST(Construction, StopsAtFirstRejectedUniform) {
  // Uniform 2 carries one unit and needs the same two tours.
  auto inst = shared(makeInstance(2, {{1, 0, {1, 2, 0}, 10, 0}}));
  SearchConfig cfg;
  cfg.mixedSamples = 0;
  Search s(inst, cfg);
  s.construct();
  EXPECT_EQ(s.stats().evaluations, 2);
  ASSERT_EQ(s.archive().size(), 1u);
  EXPECT_EQ(s.archive().entries()[0].freqs, FrequencyVector{1});
}

TEST(Construction, EvaluationCount) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto inst = generated(2, 12, seed);
    // Independent replay of the uniform phase.
    pareto::Archive uniform;
    int jStop = inst->horizon;
    for (int j = 1; j <= inst->horizon; ++j) {
      auto f = FrequencyVector::uniform(2, j);
      if (!uniform.insert(evaluateObjectives(*inst, f, {}), f)) {
        jStop = j;
        break;
      }
    }
    SearchConfig cfg;
    cfg.mixedSamples = 1;
    cfg.seed = seed;
    Search s(inst, cfg);
    s.construct();
    EXPECT_EQ(s.stats().evaluations, jStop + (jStop - 1)) << "seed " << seed;
    EXPECT_EQ(s.lastStepEvaluations(), s.stats().evaluations);
  }
}

TEST(Construction, SingleMixedPairForTwoCustomers) {
  // With n=2 a pair (j, j+1) has only two mixed vectors; both are reachable.
  auto inst = generated(2, 6, 9);
  SearchConfig cfg;
  cfg.mixedSamples = 30;
  Search s(inst, cfg);
  s.construct();
  EXPECT_LE(s.stats().evaluations, 6 + 2 * 5);
}

TEST(Run, SinglePeriodInstance) {
  auto inst = shared(makeInstance(10, {{1, 0, {4}, 10, 0}, {0, 1, {3}, 10, 0}}));
  Search s(inst, SearchConfig{});
  EXPECT_EQ(s.run(), StopReason::Converged);
  EXPECT_EQ(s.stats().steps, 1);
  EXPECT_EQ(s.stats().evaluations, 1);
  EXPECT_EQ(s.archive().size(), 1u);
}

TEST(Run, FinalArchiveInvariants) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto inst = generated(5, 10, seed);
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.refPointCount = 5;
    Search s(inst, cfg);
    s.run();
    expectMutuallyNondominated(s.archive());
    EXPECT_EQ(s.stats().archiveSize, static_cast<std::int64_t>(s.archive().size()));
    // The all-ones outcome has zero inventory, so the archive must hold an
    // outcome that weakly dominates it.
    const auto ones = evaluateObjectives(*inst, FrequencyVector::uniform(5, 1), cfg.evalSettings());
    bool covered = false;
    for (const auto& e : s.archive().entries()) {
      covered = covered || e.objectives == ones || pareto::dominates(e.objectives, ones);
    }
    EXPECT_TRUE(covered);
    for (const auto& e : s.archive().entries()) {
      EXPECT_EQ(e.objectives, evaluateObjectives(*inst, e.freqs, cfg.evalSettings()));
    }
  }
}

TEST(Run, PerStepEvaluationBound) {
  auto inst = generated(6, 15, 4);
  for (int R : {3, 5, 11}) {
    SearchConfig cfg;
    cfg.refPointCount = R;
    Search s(inst, cfg);
    s.construct();
    pareto::Archive before = s.archive();
    bool improved = true;
    while (improved) {
      improved = s.improvementStep();
      EXPECT_LE(s.lastStepRepresentatives(), static_cast<std::size_t>(R));
      EXPECT_LE(s.lastStepEvaluations(), 2 * 6 * R);
      EXPECT_TRUE(s.archive().weaklyDominates(before));
      before = s.archive();
    }
  }
}

TEST(Run, DeterministicAcrossThreadCounts) {
  auto inst = generated(6, 12, 2);
  auto runWith = [&](int threads, vrp::Solver solver) {
    SearchConfig cfg;
    cfg.threads = threads;
    cfg.solver = solver;
    cfg.seed = 77;
    Search s(inst, cfg);
    s.run();
    std::vector<std::pair<ObjectiveVector, FrequencyVector>> out;
    for (const auto& e : s.archive().entries()) out.emplace_back(e.objectives, e.freqs);
    return std::make_pair(out, s.stats().evaluations);
  };
  for (auto solver : {vrp::Solver::Savings, vrp::Solver::Rtr}) {
    const auto a = runWith(1, solver);
    EXPECT_EQ(a, runWith(4, solver));
    EXPECT_EQ(a, runWith(1, solver));
  }
}

TEST(Run, BudgetsAndCancellation) {
  auto inst = generated(8, 20, 3);
  SearchConfig cfg;
  cfg.maxSteps = 2;
  Search s(inst, cfg);
  const auto reason = s.run();
  if (reason == StopReason::Budget) EXPECT_EQ(s.stats().steps, 2);
  EXPECT_LE(s.stats().steps, 2);

  std::stop_source src;
  src.request_stop();
  Search c(inst, SearchConfig{});
  EXPECT_EQ(c.run(src.get_token()), StopReason::Cancelled);
  EXPECT_TRUE(c.constructed());
  EXPECT_EQ(c.stats().steps, 0);
}

TEST(Run, RefinementKeepsArchiveMonotone) {
  auto inst = generated(6, 12, 6);
  Search s(inst, SearchConfig{});
  s.run();
  const auto before = s.archive();
  s.setUserReferencePoints({{0.1, 0.1}});
  EXPECT_EQ(s.referencePoints().count(), 3u);
  s.run();
  EXPECT_TRUE(s.archive().weaklyDominates(before));
  for (const auto& e : before.entries()) {
    const auto* kept = s.archive().find(e.id);
    if (kept == nullptr) {
      bool dominated = false;
      for (const auto& x : s.archive().entries()) {
        dominated = dominated || pareto::dominates(x.objectives, e.objectives);
      }
      EXPECT_TRUE(dominated);
    }
  }
  EXPECT_THROW(s.setUserReferencePoints({{1.2, 0}}), ContractError);
}

TEST(Run, ResumeFromSavedArchive) {
  auto inst = generated(5, 10, 8);
  Search a(inst, SearchConfig{});
  a.run();
  Search b(inst, SearchConfig{}, a.archive(), a.stats());
  EXPECT_TRUE(b.constructed());
  EXPECT_EQ(b.run(), StopReason::Converged);
  EXPECT_TRUE(b.archive().weaklyDominates(a.archive()));
}

TEST(Enumerate, SingleCustomer) {
  auto inst = generated(1, 6, 5);
  auto res = enumerateFront(*inst, 6);
  EXPECT_EQ(res.evaluations, 6u);
  expectMutuallyNondominated(res.front);
  pareto::Archive check;
  for (int k = 1; k <= 6; ++k) {
    EvalSettings exact{vrp::Solver::Exact, 1, {}};
    check.insert(evaluateObjectives(*inst, FrequencyVector{k}, exact), FrequencyVector{k});
  }
  ASSERT_EQ(check.size(), res.front.size());
  for (std::size_t i = 0; i < check.size(); ++i) {
    EXPECT_EQ(check.entries()[i].objectives, res.front.entries()[i].objectives);
  }
}

TEST(Enumerate, FourCustomers) {
  auto inst = generated(4, 6, 12);
  auto res = enumerateFront(*inst, 4, 2);
  EXPECT_EQ(res.evaluations, 256u);
  expectMutuallyNondominated(res.front);
  EXPECT_EQ(res.front.entries()[0].objectives.inventory, 0.0);
}

TEST(Enumerate, Guards) {
  auto big = generated(10, 6, 1);
  EXPECT_THROW(enumerateFront(*big, 4), ContractError);
  auto small = generated(2, 3, 1);
  EXPECT_THROW(enumerateFront(*small, 4), ContractError);
  EXPECT_THROW(enumerateFront(*small, 0), ContractError);
}

}  // namespace
}  // namespace irp::search
