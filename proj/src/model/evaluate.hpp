#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "model/instance.hpp"
#include "model/inventory.hpp"
#include "vrp/routing.hpp"

namespace irp {

struct ObjectiveVector {
  double inventory = 0.0;
  double distance = 0.0;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

struct EvalSettings {
  vrp::Solver solver = vrp::Solver::Savings;
  std::uint64_t seed = 1;
  vrp::RtrParams rtr;
};

struct Solution {
  FrequencyVector freqs;
  InventoryTrajectory trajectory;
  std::vector<vrp::RoutingSolution> periodRoutes;  // index t-1 for period t
  ObjectiveVector objectives;
};

// The routing problem of one period: every customer with a positive delivery.
vrp::RoutingProblem periodProblem(const Instance& inst, const InventoryTrajectory& traj, int period);

// Seed handed to the VRP solver. Derived from the problem content rather than
// the period so identical routing problems always get identical answers.
std::uint64_t routingSeed(std::uint64_t seed, const vrp::RoutingProblem& p);

// Thread-safe memo of solved routing problems, keyed on the full problem and
// the settings that affect the answer.
class RoutingCache {
public:
  explicit RoutingCache(std::size_t maxEntries = 1u << 18);

  std::shared_ptr<const vrp::RoutingSolution> solve(const vrp::RoutingProblem& p,
                                                    const EvalSettings& settings);

  std::size_t hits() const;
  std::size_t misses() const;

private:
  using Key = std::vector<std::int64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<Key, std::shared_ptr<const vrp::RoutingSolution>, KeyHash> map;
    std::size_t hits = 0;
    std::size_t misses = 0;
  };
  static constexpr std::size_t kShards = 16;

  std::size_t maxPerShard_;
  std::array<Shard, kShards> shards_;
};

// Full evaluation: stock simulation, one VRP per period with deliveries, and
// both objectives. Pure in (inst, freqs, settings); the cache only saves work.
Solution evaluate(const Instance& inst, const FrequencyVector& freqs,
                  const EvalSettings& settings, RoutingCache* cache = nullptr);

// Same objectives as evaluate() without keeping routes.
ObjectiveVector evaluateObjectives(const Instance& inst, const FrequencyVector& freqs,
                                   const EvalSettings& settings, RoutingCache* cache = nullptr);

}  // namespace irp
