#include <algorithm>
#include <tuple>

#include "vrp/routing.hpp"

namespace irp::vrp {

namespace {

struct Saving {
  double value;
  int i;
  int j;
};

}  // namespace

RoutingSolution savingsConstruct(const RoutingProblem& p) {
  p.check();
  const DistanceMatrix dist(p);
  const int m = static_cast<int>(p.stops.size());

  std::vector<std::vector<int>> routes(static_cast<std::size_t>(m));
  std::vector<int> routeOf(static_cast<std::size_t>(m));
  std::vector<Quantity> load(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    routes[k] = {k};
    routeOf[k] = k;
    load[k] = p.stops[k].load;
  }

  std::vector<Saving> savings;
  savings.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m) / 2);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double s = dist(0, i + 1) + dist(0, j + 1) - dist(i + 1, j + 1);
      if (s > 0.0) savings.push_back({s, i, j});
    }
  }
  std::sort(savings.begin(), savings.end(), [](const Saving& a, const Saving& b) {
    if (a.value != b.value) return a.value > b.value;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });

  auto atEnd = [](const std::vector<int>& r, int k) { return r.front() == k || r.back() == k; };

  for (const auto& s : savings) {
    const int ri = routeOf[s.i];
    const int rj = routeOf[s.j];
    if (ri == rj || load[ri] + load[rj] > p.vehicleCap) continue;
    auto& a = routes[ri];
    auto& b = routes[rj];
    if (!atEnd(a, s.i) || !atEnd(b, s.j)) continue;

    // Orient so that a ends with i and b starts with j, then join.
    if (a.back() != s.i) std::reverse(a.begin(), a.end());
    if (b.front() != s.j) std::reverse(b.begin(), b.end());
    for (int k : b) routeOf[k] = ri;
    a.insert(a.end(), b.begin(), b.end());
    load[ri] += load[rj];
    b.clear();
    load[rj] = 0;
  }

  return makeSolution(p, dist, routes);
}

}  // namespace irp::vrp
