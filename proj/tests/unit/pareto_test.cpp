#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "model/errors.hpp"
#include "pareto/archive.hpp"
#include "pareto/reference.hpp"

namespace irp::pareto {
namespace {

Archive archiveOf(std::initializer_list<ObjectiveVector> outcomes) {
  Archive a;
  int k = 1;
  for (const auto& o : outcomes) a.insert(o, FrequencyVector{k++});
  return a;
}

std::vector<ObjectiveVector> objectivesOf(const Archive& a) {
  std::vector<ObjectiveVector> out;
  for (const auto& e : a.entries()) out.push_back(e.objectives);
  return out;
}

TEST(Dominance, Basics) {
  EXPECT_TRUE(dominates({1, 5}, {2, 5}));
  EXPECT_FALSE(dominates({2, 3}, {2, 3}));
  EXPECT_FALSE(dominates({1, 5}, {5, 1}));
  EXPECT_FALSE(dominates({5, 1}, {1, 5}));
  EXPECT_FALSE(dominates({2, 5}, {1, 5}));
}

TEST(Archive, InsertIncomparable) {
  auto a = archiveOf({{1, 5}, {5, 1}});
  EXPECT_TRUE(a.insert({3, 3}, FrequencyVector{9}));
  EXPECT_EQ(objectivesOf(a), (std::vector<ObjectiveVector>{{1, 5}, {3, 3}, {5, 1}}));
}

TEST(Archive, RejectDominated) {
  auto a = archiveOf({{1, 5}, {5, 1}});
  EXPECT_FALSE(a.insert({2, 6}, FrequencyVector{9}));
  EXPECT_EQ(objectivesOf(a), (std::vector<ObjectiveVector>{{1, 5}, {5, 1}}));
}

TEST(Archive, DominatorEvictsAll) {
  auto a = archiveOf({{1, 5}, {5, 1}});
  EXPECT_TRUE(a.insert({0, 0}, FrequencyVector{9}));
  EXPECT_EQ(objectivesOf(a), (std::vector<ObjectiveVector>{{0, 0}}));
}

TEST(Archive, DuplicateRejected) {
  auto a = archiveOf({{1, 5}});
  EXPECT_FALSE(a.insert({1, 5}, FrequencyVector{2}));
  EXPECT_EQ(a.size(), 1u);
  EXPECT_EQ(a.entries()[0].freqs, FrequencyVector{1});
}

TEST(Archive, StableIds) {
  auto a = archiveOf({{1, 5}, {5, 1}});
  const auto id = a.entries()[1].id;
  a.insert({3, 3}, FrequencyVector{9});
  ASSERT_NE(a.find(id), nullptr);
  EXPECT_EQ(a.find(id)->objectives, (ObjectiveVector{5, 1}));
  EXPECT_EQ(a.find(999), nullptr);

  Archive b;
  EXPECT_TRUE(b.restore(42, {2, 2}, FrequencyVector{1}));
  b.insert({1, 3}, FrequencyVector{2});
  EXPECT_NE(b.find(42), nullptr);
  EXPECT_GT(b.entries()[0].id, 42u);
}

TEST(Archive, RandomInsertionsKeepInvariants) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coord(0, 60);
  for (int rep = 0; rep < 20; ++rep) {
    Archive a;
    for (int op = 0; op < 500; ++op) {
      ObjectiveVector o{double(coord(rng)), double(coord(rng))};
      Archive before = a;
      bool dominated = false;
      for (const auto& e : before.entries()) {
        dominated = dominated || dominates(e.objectives, o) || e.objectives == o;
      }
      const bool accepted = a.insert(o, FrequencyVector{op + 1});
      ASSERT_EQ(accepted, !dominated);
      if (!accepted) ASSERT_EQ(objectivesOf(a), objectivesOf(before));
      if (accepted) ASSERT_TRUE(a.weaklyDominates(before));
      const auto es = a.entries();
      for (std::size_t i = 0; i + 1 < es.size(); ++i) {
        ASSERT_LT(es[i].objectives.inventory, es[i + 1].objectives.inventory);
        ASSERT_GT(es[i].objectives.distance, es[i + 1].objectives.distance);
      }
    }
  }
}

TEST(Archive, CsvExport) {
  Archive a;
  a.insert({3, 10.5}, FrequencyVector{1, 2});
  a.insert({1, 20}, FrequencyVector{1, 1});
  std::ostringstream out;
  writeCsv(out, a, 2);
  EXPECT_EQ(out.str(), "inventory,distance,pi_1,pi_2\n1,20,1,1\n3,10.5,1,2\n");
}

TEST(Normalization, ScalesByExtremes) {
  auto a = archiveOf({{10, 200}, {50, 100}});
  auto n = Normalization::of(a);
  EXPECT_EQ(n({30, 150}), (NormalizedPoint{0.5, 0.5}));
  EXPECT_EQ(n({10, 200}), (NormalizedPoint{0, 1}));
  EXPECT_EQ(n({50, 100}), (NormalizedPoint{1, 0}));
}

TEST(Normalization, DegenerateArchive) {
  auto a = archiveOf({{7, 3}});
  EXPECT_EQ(Normalization::of(a)({7, 3}), (NormalizedPoint{0, 0}));
  EXPECT_THROW(Normalization::of(Archive{}), ContractError);
}

TEST(ReferencePoints, CanonicalLayouts) {
  auto r3 = buildReferencePoints(3);
  EXPECT_EQ(r3.points, (std::vector<NormalizedPoint>{{0, 0}, {0, 1}, {1, 0}}));

  auto r5 = buildReferencePoints(5);
  EXPECT_EQ(r5.points,
            (std::vector<NormalizedPoint>{{0, 0}, {0, 1}, {1, 0}, {0, 0.5}, {0.5, 0}}));

  auto r9 = buildReferencePoints(9);
  EXPECT_EQ(r9.points, (std::vector<NormalizedPoint>{{0, 0},
                                                    {0, 1},
                                                    {1, 0},
                                                    {0, 0.25},
                                                    {0, 0.5},
                                                    {0, 0.75},
                                                    {0.25, 0},
                                                    {0.5, 0},
                                                    {0.75, 0}}));
  EXPECT_EQ(buildReferencePoints(11).count(), 11u);
}

TEST(ReferencePoints, RejectsBadCounts) {
  for (int r : {-1, 0, 1, 2, 4, 10}) {
    EXPECT_THROW(buildReferencePoints(r), ContractError) << r;
  }
  try {
    buildReferencePoints(4);
  } catch (const ContractError& e) {
    EXPECT_STREQ(e.what(), "reference point count must be odd ≥ 3");
  }
}

TEST(ReferencePoints, UserPointsAddCorners) {
  auto refs = userReferencePoints({{0.1, 0.1}});
  EXPECT_EQ(refs.points, (std::vector<NormalizedPoint>{{0.1, 0.1}, {0, 1}, {1, 0}}));
  EXPECT_EQ(userReferencePoints({{0, 1}}).count(), 2u);
  EXPECT_THROW(userReferencePoints({{1.5, 0}}), ContractError);
  EXPECT_THROW(userReferencePoints({{0.5, -0.1}}), ContractError);
}

TEST(Chebyshev, Examples) {
  const Weights w;
  EXPECT_DOUBLE_EQ(chebyshevDistance({0.5, 0.5}, {0, 0}, w), 0.5);
  EXPECT_DOUBLE_EQ(chebyshevDistance({0.3, 0.4}, {0.3, 0.4}, w), 0.0);
  EXPECT_NEAR(chebyshevDistance({0.2, 0.7}, {0, 0.5}, w), 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(chebyshevDistance({0.5, 0.2}, {0, 0}, Weights{1, 3}), 0.6);
}

TEST(Chebyshev, MetricProperties) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  const Weights w{1, 1};
  for (int rep = 0; rep < 1000; ++rep) {
    NormalizedPoint a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    EXPECT_GE(chebyshevDistance(a, b, w), 0.0);
    EXPECT_DOUBLE_EQ(chebyshevDistance(a, b, w), chebyshevDistance(b, a, w));
    EXPECT_LE(chebyshevDistance(a, c, w),
              chebyshevDistance(a, b, w) + chebyshevDistance(b, c, w) + 1e-12);
  }
}

// Archive whose normalized image is {(0,1),(0.2,0.7),(0.5,0.5),(1,0)}.
Archive selectionArchive() { return archiveOf({{0, 10}, {2, 7}, {5, 5}, {10, 0}}); }

TEST(Selection, NearestToIdealPoint) {
  ReferencePointSet refs{{{0, 0}}, {}};
  auto picked = selectRepresentatives(selectionArchive(), refs);
  ASSERT_EQ(picked.size(), 1u);
  EXPECT_EQ(picked[0], 2u);
}

TEST(Selection, NearestToAxisPoint) {
  ReferencePointSet refs{{{0, 0.5}}, {}};
  auto picked = selectRepresentatives(selectionArchive(), refs);
  ASSERT_EQ(picked.size(), 1u);
  EXPECT_EQ(picked[0], 1u);
}

TEST(Selection, SingleEntryAndDeduplication) {
  auto one = archiveOf({{4, 4}});
  EXPECT_EQ(selectRepresentatives(one, buildReferencePoints(11)), (std::vector<std::size_t>{0}));
  auto picked = selectRepresentatives(selectionArchive(), buildReferencePoints(3));
  EXPECT_EQ(picked, (std::vector<std::size_t>{0, 2, 3}));
}

TEST(Selection, TiesGoToSmallerInventory) {
  // (0,1) and (1,0) are both at distance 1 from (0,0) when nothing else is.
  auto a = archiveOf({{0, 1}, {1, 0}});
  ReferencePointSet refs{{{0, 0}}, {}};
  EXPECT_EQ(selectRepresentatives(a, refs), (std::vector<std::size_t>{0}));
}

}  // namespace
}  // namespace irp::pareto
