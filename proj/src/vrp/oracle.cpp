#include <algorithm>
#include <limits>

#include "model/errors.hpp"
#include "vrp/routing.hpp"

namespace irp::vrp {

// Exact per-subset tour lengths via Held-Karp, then the cheapest partition of
// all stops into capacity-feasible subsets.
RoutingSolution bruteForceOracle(const RoutingProblem& p) {
  p.check();
  const int m = static_cast<int>(p.stops.size());
  if (static_cast<std::size_t>(m) > kOracleMaxStops) {
    throw ContractError("brute-force oracle refuses " + std::to_string(m) + " stops (limit " +
                        std::to_string(kOracleMaxStops) + ")");
  }
  const DistanceMatrix dist(p);
  if (m == 0) return {};

  constexpr double inf = std::numeric_limits<double>::infinity();
  const int full = (1 << m) - 1;
  const auto subsets = static_cast<std::size_t>(1) << m;

  // path[mask][last]: shortest depot -> ... -> last covering exactly mask.
  std::vector<std::vector<double>> path(subsets, std::vector<double>(m, inf));
  std::vector<std::vector<int>> parent(subsets, std::vector<int>(m, -1));
  for (int k = 0; k < m; ++k) path[1u << k][k] = dist(0, k + 1);
  for (int mask = 1; mask <= full; ++mask) {
    for (int last = 0; last < m; ++last) {
      if (!(mask & (1 << last)) || path[mask][last] == inf) continue;
      for (int next = 0; next < m; ++next) {
        if (mask & (1 << next)) continue;
        const int grown = mask | (1 << next);
        const double c = path[mask][last] + dist(last + 1, next + 1);
        if (c < path[grown][next]) {
          path[grown][next] = c;
          parent[grown][next] = last;
        }
      }
    }
  }

  std::vector<double> tour(subsets, inf);
  std::vector<int> tourEnd(subsets, -1);
  std::vector<Quantity> load(subsets, 0);
  for (int mask = 1; mask <= full; ++mask) {
    for (int k = 0; k < m; ++k) {
      if (mask & (1 << k)) load[mask] += p.stops[k].load;
    }
    if (load[mask] > p.vehicleCap) continue;
    for (int last = 0; last < m; ++last) {
      if (!(mask & (1 << last))) continue;
      const double c = path[mask][last] + dist(last + 1, 0);
      if (c < tour[mask]) {
        tour[mask] = c;
        tourEnd[mask] = last;
      }
    }
  }

  std::vector<double> best(subsets, inf);
  std::vector<int> choice(subsets, 0);
  best[0] = 0.0;
  for (int mask = 1; mask <= full; ++mask) {
    const int low = mask & -mask;
    for (int sub = mask; sub > 0; sub = (sub - 1) & mask) {
      if (!(sub & low) || tour[sub] == inf) continue;
      const double c = tour[sub] + best[mask ^ sub];
      if (c < best[mask]) {
        best[mask] = c;
        choice[mask] = sub;
      }
    }
  }

  std::vector<std::vector<int>> routes;
  for (int mask = full; mask > 0; mask ^= choice[mask]) {
    int sub = choice[mask];
    std::vector<int> seq;
    int last = tourEnd[sub];
    while (last >= 0) {
      seq.push_back(last);
      const int prev = parent[sub][last];
      sub ^= 1 << last;
      last = prev;
    }
    std::reverse(seq.begin(), seq.end());
    routes.push_back(std::move(seq));
  }
  return makeSolution(p, dist, routes);
}

}  // namespace irp::vrp
