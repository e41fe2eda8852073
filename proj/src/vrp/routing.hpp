#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "model/instance.hpp"

namespace irp::vrp {

struct Stop {
  int id = 0;
  Quantity load = 0;
  Point location;
};

// One period's capacitated VRP. Stop ids must be distinct and every load
// must fit in a single vehicle.
struct RoutingProblem {
  Point depot;
  std::vector<Stop> stops;
  Quantity vehicleCap = 0;

  // Throws ContractError on a malformed problem.
  void check() const;
};

struct Route {
  std::vector<int> stopSequence;  // customer ids in visiting order
  Quantity load = 0;
  double length = 0.0;
};

struct RoutingSolution {
  std::vector<Route> routes;
  double totalDistance = 0.0;
};

// Exact runs the brute-force oracle and is limited to kOracleMaxStops stops.
enum class Solver { Savings, Rtr, Exact };

std::string_view toString(Solver s);
// Throws ContractError for anything but "savings", "rtr" or "exact".
Solver solverFromString(std::string_view name);

struct RtrParams {
  double deviation = 0.01;  // fraction of the record accepted uphill
  int maxNonImproving = 30;
  int neighborCount = 10;
};

// Node 0 is the depot, node k+1 is stops[k].
class DistanceMatrix {
public:
  explicit DistanceMatrix(const RoutingProblem& p);

  double operator()(int a, int b) const {
    return data_[static_cast<std::size_t>(a) * size_ + static_cast<std::size_t>(b)];
  }
  std::size_t size() const { return size_; }

private:
  std::size_t size_;
  std::vector<double> data_;
};

// Builds a solution from routes given as stop indices (positions in
// p.stops), computing loads and lengths. Empty routes are dropped.
RoutingSolution makeSolution(const RoutingProblem& p, const DistanceMatrix& dist,
                             const std::vector<std::vector<int>>& routesByIndex);

// Converts back to stop indices. Throws ContractError on unknown ids.
std::vector<std::vector<int>> routesByIndex(const RoutingProblem& p, const RoutingSolution& s);

// Every stop exactly once, loads within capacity, lengths consistent.
bool isFeasible(const RoutingProblem& p, const RoutingSolution& s);

// Parallel Clarke-Wright savings construction.
RoutingSolution savingsConstruct(const RoutingProblem& p);

// Record-to-record travel improvement; never returns a worse solution than
// start. Throws ContractError if start is infeasible.
RoutingSolution rtrImprove(const RoutingProblem& p, const RoutingSolution& start,
                           std::uint64_t seed, const RtrParams& params = {});

// Savings, savings followed by RTR, or the exact oracle.
RoutingSolution solve(const RoutingProblem& p, Solver solver, std::uint64_t seed,
                      const RtrParams& params = {});

inline constexpr std::size_t kOracleMaxStops = 8;

// Exact optimum by exhaustive search. Throws ContractError above
// kOracleMaxStops stops.
RoutingSolution bruteForceOracle(const RoutingProblem& p);

}  // namespace irp::vrp
