#include "model/evaluate.hpp"

#include <bit>
#include <sstream>

#include "model/errors.hpp"

namespace irp {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over the running hash
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

template <class Sink>
void routePeriods(const Instance& inst, const InventoryTrajectory& traj,
                  const EvalSettings& settings, RoutingCache* cache, Sink&& sink) {
  for (int t = 1; t <= inst.horizon; ++t) {
    auto problem = periodProblem(inst, traj, t);
    if (problem.stops.empty()) {
      sink(t, std::make_shared<const vrp::RoutingSolution>());
      continue;
    }
    if (cache != nullptr) {
      sink(t, cache->solve(problem, settings));
    } else {
      sink(t, std::make_shared<const vrp::RoutingSolution>(vrp::solve(
                  problem, settings.solver, routingSeed(settings.seed, problem), settings.rtr)));
    }
  }
}

}  // namespace

vrp::RoutingProblem periodProblem(const Instance& inst, const InventoryTrajectory& traj,
                                  int period) {
  vrp::RoutingProblem p;
  p.depot = inst.depot;
  p.vehicleCap = inst.vehicleCap;
  for (std::size_t i = 0; i < inst.customerCount(); ++i) {
    const Quantity q = traj.deliveries.at(i, period);
    if (q <= 0) continue;
    if (q > inst.vehicleCap) {
      std::ostringstream msg;
      msg << "delivery " << q << " to customer " << inst.customers[i].id << " in period "
          << period << " exceeds vehicle capacity " << inst.vehicleCap;
      throw InvariantError(msg.str());
    }
    p.stops.push_back({inst.customers[i].id, q, inst.customers[i].location});
  }
  return p;
}

std::uint64_t routingSeed(std::uint64_t seed, const vrp::RoutingProblem& p) {
  std::uint64_t h = mix(0x243f6a8885a308d3ULL, seed);
  for (const auto& s : p.stops) {
    h = mix(h, static_cast<std::uint64_t>(s.id));
    h = mix(h, static_cast<std::uint64_t>(s.load));
  }
  return h;
}

RoutingCache::RoutingCache(std::size_t maxEntries)
    : maxPerShard_(std::max<std::size_t>(1, maxEntries / kShards)) {}

std::size_t RoutingCache::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0;
  for (auto v : k) h = mix(h, static_cast<std::uint64_t>(v));
  return static_cast<std::size_t>(h);
}

std::shared_ptr<const vrp::RoutingSolution> RoutingCache::solve(const vrp::RoutingProblem& p,
                                                                const EvalSettings& settings) {
  auto bits = [](double v) { return std::bit_cast<std::int64_t>(v); };
  Key key;
  key.reserve(p.stops.size() * 4 + 9);
  key.push_back(static_cast<std::int64_t>(settings.solver));
  key.push_back(static_cast<std::int64_t>(settings.seed));
  key.push_back(bits(settings.rtr.deviation));
  key.push_back(settings.rtr.maxNonImproving);
  key.push_back(settings.rtr.neighborCount);
  key.push_back(p.vehicleCap);
  key.push_back(bits(p.depot.x));
  key.push_back(bits(p.depot.y));
  for (const auto& s : p.stops) {
    key.push_back(s.id);
    key.push_back(s.load);
    key.push_back(bits(s.location.x));
    key.push_back(bits(s.location.y));
  }
  auto& shard = shards_[KeyHash{}(key) % kShards];
  {
    std::lock_guard lock(shard.mutex);
    if (auto it = shard.map.find(key); it != shard.map.end()) {
      ++shard.hits;
      return it->second;
    }
    ++shard.misses;
  }
  auto solved = std::make_shared<const vrp::RoutingSolution>(
      vrp::solve(p, settings.solver, routingSeed(settings.seed, p), settings.rtr));
  std::lock_guard lock(shard.mutex);
  if (shard.map.size() >= maxPerShard_) shard.map.clear();
  shard.map.emplace(std::move(key), solved);
  return solved;
}

std::size_t RoutingCache::hits() const {
  std::size_t total = 0;
  for (const auto& s : shards_) {
    std::lock_guard lock(s.mutex);
    total += s.hits;
  }
  return total;
}

std::size_t RoutingCache::misses() const {
  std::size_t total = 0;
  for (const auto& s : shards_) {
    std::lock_guard lock(s.mutex);
    total += s.misses;
  }
  return total;
}

Solution evaluate(const Instance& inst, const FrequencyVector& freqs,
                  const EvalSettings& settings, RoutingCache* cache) {
  Solution sol;
  sol.freqs = freqs;
  sol.trajectory = simulateInventory(inst, freqs);
  sol.periodRoutes.resize(static_cast<std::size_t>(inst.horizon));
  routePeriods(inst, sol.trajectory, settings, cache,
               [&](int t, std::shared_ptr<const vrp::RoutingSolution> routes) {
                 sol.objectives.distance += routes->totalDistance;
                 sol.periodRoutes[static_cast<std::size_t>(t - 1)] = *routes;
               });
  sol.objectives.inventory = static_cast<double>(sol.trajectory.totalInventory());
  return sol;
}

ObjectiveVector evaluateObjectives(const Instance& inst, const FrequencyVector& freqs,
                                   const EvalSettings& settings, RoutingCache* cache) {
  const auto traj = simulateInventory(inst, freqs);
  ObjectiveVector obj;
  routePeriods(inst, traj, settings, cache,
               [&](int, const std::shared_ptr<const vrp::RoutingSolution>& routes) {
                 obj.distance += routes->totalDistance;
               });
  obj.inventory = static_cast<double>(traj.totalInventory());
  return obj;
}

}  // namespace irp
