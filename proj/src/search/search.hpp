#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stop_token>
#include <unordered_map>
#include <vector>

#include "model/evaluate.hpp"
#include "model/instance.hpp"
#include "model/inventory.hpp"
#include "pareto/archive.hpp"
#include "pareto/reference.hpp"

namespace irp::search {

struct SearchConfig {
  int refPointCount = 3;
  vrp::Solver solver = vrp::Solver::Savings;
  std::uint64_t seed = 1;
  int mixedSamples = 5;  // random vectors per consecutive (j, j+1) pair

  // Budgets apply to each call of Search::run().
  std::optional<std::int64_t> maxSteps;
  std::optional<std::int64_t> maxEvaluations;
  std::optional<double> maxSeconds;

  // When non-empty, replaces the canonical layout (corners are added).
  std::vector<pareto::NormalizedPoint> userRefPoints;
  pareto::Weights weights;
  vrp::RtrParams rtr;
  int threads = 0;  // 0 = hardware concurrency

  // Throws ContractError on an invalid configuration.
  void check() const;
  pareto::ReferencePointSet referencePoints() const;
  EvalSettings evalSettings() const;
};

struct SearchStats {
  std::int64_t steps = 0;
  std::int64_t evaluations = 0;
  std::int64_t archiveSize = 0;
  double elapsedSeconds = 0.0;
  double cpuSeconds = 0.0;
};

enum class StopReason { Converged, Budget, Cancelled };

// All ±1 changes of a single frequency that stay within 1..horizon, ordered
// by customer, increment before decrement.
std::vector<FrequencyVector> neighborhood(const FrequencyVector& freqs, int horizon);

// Multi-point hillclimber over frequency vectors. Owns the archive and the
// evaluation memo of one run; single-threaded from the caller's side.
class Search {
public:
  // Throws ValidationError for an invalid instance, ContractError for a bad
  // config, before any evaluation happens.
  Search(std::shared_ptr<const Instance> inst, SearchConfig cfg);

  // Resumes from a previously saved archive (the memo starts empty).
  Search(std::shared_ptr<const Instance> inst, SearchConfig cfg, pareto::Archive archive,
         SearchStats stats);

  // Uniform frequencies 1, 2, ... until one is rejected by the archive, then
  // mixedSamples random vectors between each consecutive pair below that.
  void construct();

  // One neighborhood sweep around the current representatives. Returns true
  // if any new outcome entered the archive.
  bool improvementStep();

  // construct() if needed, then steps until convergence, budget or stop.
  // onProgress fires after construction and after every step.
  StopReason run(std::stop_token stop = {},
                 const std::function<void(const Search&)>& onProgress = {});

  // Refinement: subsequent steps use these points plus the two corners.
  void setUserReferencePoints(std::vector<pareto::NormalizedPoint> points);

  const Instance& instance() const { return *inst_; }
  std::shared_ptr<const Instance> instancePtr() const { return inst_; }
  const SearchConfig& config() const { return cfg_; }
  const pareto::Archive& archive() const { return archive_; }
  const SearchStats& stats() const { return stats_; }
  pareto::ReferencePointSet referencePoints() const { return cfg_.referencePoints(); }
  bool constructed() const { return constructed_; }
  std::int64_t lastStepEvaluations() const { return lastStepEvaluations_; }
  std::size_t lastStepRepresentatives() const { return lastStepRepresentatives_; }

private:
  // Evaluates the vectors not seen before, in parallel, and inserts them in
  // the given order. Returns whether any insertion was accepted.
  bool evaluateAndInsert(const std::vector<FrequencyVector>& candidates);
  bool insertEvaluated(const FrequencyVector& freqs);
  void addMainThreadCpu(double since);

  std::shared_ptr<const Instance> inst_;
  SearchConfig cfg_;
  EvalSettings evalSettings_;
  RoutingCache routing_;
  pareto::Archive archive_;
  SearchStats stats_;
  std::unordered_map<FrequencyVector, ObjectiveVector, FrequencyHash> memo_;
  std::mt19937_64 rng_;
  bool constructed_ = false;
  std::int64_t lastStepEvaluations_ = 0;
  std::size_t lastStepRepresentatives_ = 0;
};

}  // namespace irp::search
