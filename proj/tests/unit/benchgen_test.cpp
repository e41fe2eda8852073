#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "benchgen/benchgen.hpp"
#include "model/errors.hpp"
#include "test_support.hpp"

namespace irp::bench {
namespace {

Geometry lineGeometry(std::initializer_list<double> bases) {
  Geometry g;
  g.name = "line";
  g.depot = {0, 0};
  int id = 1;
  for (double b : bases) {
    g.customers.push_back({id, {static_cast<double>(id), 0.0}, b});
    ++id;
  }
  return g;
}

TEST(AverageDemand, ScenarioShapes) {
  EXPECT_DOUBLE_EQ(averageDemand(Scenario::Constant, 10, 7, 240), 10);
  EXPECT_DOUBLE_EQ(averageDemand(Scenario::Increasing, 10, 1, 240), 10);
  EXPECT_DOUBLE_EQ(averageDemand(Scenario::Increasing, 10, 240, 240), 20);
  EXPECT_DOUBLE_EQ(averageDemand(Scenario::Sinus, 10, 1, 240), 10);
  EXPECT_NEAR(averageDemand(Scenario::Sinus, 10, 240, 240), 10, 1e-12);
  EXPECT_DOUBLE_EQ(averageDemand(Scenario::Sinus, 10, 121, 241), 20);
  EXPECT_DOUBLE_EQ(averageDemand(Scenario::Increasing, 10, 1, 1), 10);
}

TEST(Generate, ConstantScenarioBand) {
  ScenarioSpec spec;
  spec.horizon = 240;
  auto inst = generateInstance(lineGeometry({10, 10, 10}), spec, 1000);
  for (const auto& c : inst.customers) {
    ASSERT_EQ(c.demands.size(), 240u);
    EXPECT_EQ(c.storageCap, 100);
    for (auto d : c.demands) {
      EXPECT_GE(d, 8);
      EXPECT_LE(d, 12);
    }
  }
  EXPECT_EQ(inst.name, "line-a");
}

TEST(Generate, ZeroDeviationIsExact) {
  ScenarioSpec spec;
  spec.horizon = 30;
  spec.deviation = 0.0;
  auto inst = generateInstance(lineGeometry({7, 13}), spec, 1000);
  for (auto d : inst.customers[0].demands) EXPECT_EQ(d, 7);
  for (auto d : inst.customers[1].demands) EXPECT_EQ(d, 13);
}

TEST(Generate, IncreasingScenarioEndpoint) {
  ScenarioSpec spec;
  spec.kind = Scenario::Increasing;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    spec.seed = seed;
    auto inst = generateInstance(lineGeometry({10}), spec, 1000);
    const auto last = inst.customers[0].demands.back();
    EXPECT_GE(last, 15);
    EXPECT_LE(last, 25);
    const auto first = inst.customers[0].demands.front();
    EXPECT_GE(first, 8);
    EXPECT_LE(first, 12);
  }
}

TEST(Generate, ReproducibleBySeed) {
  ScenarioSpec spec;
  spec.kind = Scenario::Sinus;
  spec.horizon = 50;
  spec.seed = 5;
  auto g = testing::randomGeometry(3, 8);
  auto a = generateInstance(g, spec, 200);
  auto b = generateInstance(g, spec, 200);
  for (std::size_t i = 0; i < a.customers.size(); ++i) {
    EXPECT_EQ(a.customers[i].demands, b.customers[i].demands);
  }
  spec.seed = 6;
  auto c = generateInstance(g, spec, 200);
  bool differs = false;
  for (std::size_t i = 0; i < a.customers.size(); ++i) {
    differs = differs || a.customers[i].demands != c.customers[i].demands;
  }
  EXPECT_TRUE(differs);
}

TEST(Generate, ClampsToVehicleCapacity) {
  ScenarioSpec spec;
  spec.horizon = 40;
  GenerationReport report;
  auto inst = generateInstance(lineGeometry({10}), spec, 9, &report);
  EXPECT_GT(report.clampedDemands, 0u);
  for (auto d : inst.customers[0].demands) EXPECT_LE(d, 9);
  EXPECT_TRUE(validateInstance(inst).ok());
}

TEST(Generate, RejectsBadSpecs) {
  ScenarioSpec spec;
  spec.horizon = 0;
  try {
    generateInstance(lineGeometry({10}), spec, 100);
    FAIL() << "expected ContractError";
  } catch (const ContractError& e) {
    EXPECT_STREQ(e.what(), "horizon must be ≥ 1");
  }
  spec.horizon = 5;
  EXPECT_THROW(generateInstance(Geometry{}, spec, 100), ContractError);
  EXPECT_THROW(generateInstance(lineGeometry({0}), spec, 100), ContractError);
  EXPECT_THROW(generateInstance(lineGeometry({3}), spec, 0), ContractError);
  EXPECT_THROW(scenarioFromString("d"), ContractError);
}

TEST(Geometry, ParsesAnnotatedListing) {
  std::istringstream in(R"(# sample
NAME example
5 100
0 0
1 10 0 4
2 0 10 6.5
)");
  auto g = parseGeometry(in, "ex");
  EXPECT_EQ(g.depot, (Point{0, 0}));
  ASSERT_EQ(g.customers.size(), 2u);
  EXPECT_EQ(g.customers[1].id, 2);
  EXPECT_DOUBLE_EQ(g.customers[1].baseDemand, 6.5);
}

TEST(Geometry, ParsesDepotKeywordAndImplicitIds) {
  std::istringstream in("depot 1 2\n3 4 5\n6 7 8\n");
  auto g = parseGeometry(in);
  EXPECT_EQ(g.depot, (Point{1, 2}));
  ASSERT_EQ(g.customers.size(), 2u);
  EXPECT_EQ(g.customers[0].id, 1);
  EXPECT_EQ(g.customers[1].id, 2);
  EXPECT_EQ(g.customers[1].location, (Point{6, 7}));
}

TEST(Geometry, RejectsMalformedLines) {
  std::istringstream noDepot("# nothing\n");
  EXPECT_THROW(parseGeometry(noDepot), FormatError);
  std::istringstream junk("depot 0 0\n1 2\n");
  EXPECT_THROW(parseGeometry(junk), FormatError);
  std::istringstream text("depot 0 0\n1 2 3\nabc\n");
  EXPECT_THROW(parseGeometry(text), FormatError);
  EXPECT_THROW(loadGeometry("/nonexistent/geometry.txt"), IoError);
}

}  // namespace
}  // namespace irp::bench
