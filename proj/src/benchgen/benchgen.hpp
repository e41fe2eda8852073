#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "model/instance.hpp"

namespace irp::bench {

enum class Scenario { Constant, Increasing, Sinus };  // a, b, c

// Throws ContractError unless name is "a", "b" or "c".
Scenario scenarioFromString(const std::string& name);
char scenarioLetter(Scenario s);

struct ScenarioSpec {
  Scenario kind = Scenario::Constant;
  int horizon = 240;
  double deviation = 0.25;
  std::uint64_t seed = 1;
  double storageCapFactor = 10.0;  // Q_i = ceil(factor * base demand)

  void check() const;
};

struct GeometryCustomer {
  int id = 0;
  Point location;
  double baseDemand = 0.0;
};

struct Geometry {
  std::string name;
  Point depot;
  std::vector<GeometryCustomer> customers;
};

// Parses a geometry listing. Blank lines and lines starting with '#' are
// skipped, as are leading lines that are not purely numeric. The depot is the
// first line of the form "depot X Y" or the first line with exactly two
// numbers; numeric lines before it are treated as a header. Customer lines
// are "ID X Y DEMAND" or "X Y DEMAND" (ids then count up from 1).
// Throws FormatError on anything else.
Geometry parseGeometry(std::istream& in, const std::string& name = "");
Geometry loadGeometry(const std::string& path);

// Average demand of a customer with base average a in period t.
double averageDemand(Scenario kind, double base, int period, int horizon);

struct GenerationReport {
  std::size_t clampedDemands = 0;  // draws reduced to min(Q_i, C)
};

// Draws integer demands uniformly from [ceil((1-dev)avg), floor((1+dev)avg)]
// per customer and period. Throws ContractError on empty geometry or
// nonpositive base demands, ValidationError naming the customer if the
// result is not a valid instance.
Instance generateInstance(const Geometry& geometry, const ScenarioSpec& spec, Quantity vehicleCap,
                          GenerationReport* report = nullptr);

}  // namespace irp::bench
