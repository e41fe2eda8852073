#include "vrp/routing.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include "model/errors.hpp"

namespace irp::vrp {

void RoutingProblem::check() const {
  if (vehicleCap <= 0) throw ContractError("vehicle capacity must be positive");
  std::set<int> ids;
  for (const auto& s : stops) {
    if (!ids.insert(s.id).second) {
      throw ContractError("duplicate stop id " + std::to_string(s.id));
    }
    if (s.load <= 0 || s.load > vehicleCap) {
      std::ostringstream msg;
      msg << "stop " << s.id << " load " << s.load << " outside 1.." << vehicleCap;
      throw ContractError(msg.str());
    }
  }
}

std::string_view toString(Solver s) {
  switch (s) {
    case Solver::Savings: return "savings";
    case Solver::Rtr: return "rtr";
    case Solver::Exact: return "exact";
  }
  return "?";
}

Solver solverFromString(std::string_view name) {
  if (name == "savings") return Solver::Savings;
  if (name == "rtr") return Solver::Rtr;
  if (name == "exact") return Solver::Exact;
  throw ContractError("unknown VRP solver '" + std::string(name) + "' (expected savings, rtr or exact)");
}

DistanceMatrix::DistanceMatrix(const RoutingProblem& p)
    : size_(p.stops.size() + 1), data_(size_ * size_, 0.0) {
  auto loc = [&](std::size_t node) { return node == 0 ? p.depot : p.stops[node - 1].location; };
  for (std::size_t a = 0; a < size_; ++a) {
    for (std::size_t b = a + 1; b < size_; ++b) {
      const double d = euclidean(loc(a), loc(b));
      data_[a * size_ + b] = d;
      data_[b * size_ + a] = d;
    }
  }
}

RoutingSolution makeSolution(const RoutingProblem& p, const DistanceMatrix& dist,
                             const std::vector<std::vector<int>>& routes) {
  RoutingSolution sol;
  for (const auto& seq : routes) {
    if (seq.empty()) continue;
    Route r;
    int prev = 0;
    for (int k : seq) {
      r.stopSequence.push_back(p.stops[static_cast<std::size_t>(k)].id);
      r.load += p.stops[static_cast<std::size_t>(k)].load;
      r.length += dist(prev, k + 1);
      prev = k + 1;
    }
    r.length += dist(prev, 0);
    sol.totalDistance += r.length;
    sol.routes.push_back(std::move(r));
  }
  return sol;
}

std::vector<std::vector<int>> routesByIndex(const RoutingProblem& p, const RoutingSolution& s) {
  std::unordered_map<int, int> index;
  for (std::size_t k = 0; k < p.stops.size(); ++k) index[p.stops[k].id] = static_cast<int>(k);
  std::vector<std::vector<int>> out;
  for (const auto& r : s.routes) {
    auto& seq = out.emplace_back();
    for (int id : r.stopSequence) {
      auto it = index.find(id);
      if (it == index.end()) throw ContractError("route visits unknown stop " + std::to_string(id));
      seq.push_back(it->second);
    }
  }
  return out;
}

bool isFeasible(const RoutingProblem& p, const RoutingSolution& s) {
  std::unordered_map<int, Quantity> load;
  for (const auto& st : p.stops) load[st.id] = st.load;
  std::set<int> seen;
  double total = 0.0;
  for (const auto& r : s.routes) {
    Quantity routeLoad = 0;
    Point prev = p.depot;
    double length = 0.0;
    for (int id : r.stopSequence) {
      auto it = load.find(id);
      if (it == load.end() || !seen.insert(id).second) return false;
      routeLoad += it->second;
      const auto& stop = *std::find_if(p.stops.begin(), p.stops.end(),
                                       [id](const Stop& x) { return x.id == id; });
      length += euclidean(prev, stop.location);
      prev = stop.location;
    }
    length += euclidean(prev, p.depot);
    if (routeLoad > p.vehicleCap || routeLoad != r.load) return false;
    if (std::abs(length - r.length) > 1e-6 * std::max(1.0, length)) return false;
    total += length;
  }
  if (seen.size() != p.stops.size()) return false;
  return std::abs(total - s.totalDistance) <= 1e-6 * std::max(1.0, total);
}

RoutingSolution solve(const RoutingProblem& p, Solver solver, std::uint64_t seed,
                      const RtrParams& params) {
  if (solver == Solver::Exact) return bruteForceOracle(p);
  auto start = savingsConstruct(p);
  if (solver == Solver::Savings) return start;
  return rtrImprove(p, start, seed, params);
}

}  // namespace irp::vrp
