#include "search/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "model/errors.hpp"

namespace irp::search {

namespace {

double threadCpuSeconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

constexpr int kMixedRedraws = 64;

}  // namespace

void SearchConfig::check() const {
  if (userRefPoints.empty() && (refPointCount < 3 || refPointCount % 2 == 0)) {
    throw ContractError("reference point count must be odd ≥ 3");
  }
  if (mixedSamples < 0) throw ContractError("mixed sample count must be ≥ 0");
  if (maxSteps && *maxSteps < 0) throw ContractError("max steps must be ≥ 0");
  if (maxEvaluations && *maxEvaluations < 0) throw ContractError("max evaluations must be ≥ 0");
  if (maxSeconds && !(*maxSeconds >= 0.0)) throw ContractError("max seconds must be ≥ 0");
  if (threads < 0) throw ContractError("thread count must be ≥ 0");
  if (rtr.deviation < 0.0 || rtr.maxNonImproving < 1 || rtr.neighborCount < 1) {
    throw ContractError("invalid RTR parameters");
  }
  referencePoints();
}

pareto::ReferencePointSet SearchConfig::referencePoints() const {
  if (!userRefPoints.empty()) return pareto::userReferencePoints(userRefPoints, weights);
  return pareto::buildReferencePoints(refPointCount, weights);
}

EvalSettings SearchConfig::evalSettings() const { return {solver, seed, rtr}; }

std::vector<FrequencyVector> neighborhood(const FrequencyVector& freqs, int horizon) {
  std::vector<FrequencyVector> out;
  out.reserve(2 * freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i] + 1 <= horizon) {
      auto up = freqs;
      ++up[i];
      out.push_back(std::move(up));
    }
    if (freqs[i] - 1 >= 1) {
      auto down = freqs;
      --down[i];
      out.push_back(std::move(down));
    }
  }
  return out;
}

Search::Search(std::shared_ptr<const Instance> inst, SearchConfig cfg)
    : inst_(std::move(inst)), cfg_(std::move(cfg)), evalSettings_(cfg_.evalSettings()),
      rng_(cfg_.seed) {
  if (!inst_) throw ContractError("search needs an instance");
  cfg_.check();
  requireValid(*inst_);
}

Search::Search(std::shared_ptr<const Instance> inst, SearchConfig cfg, pareto::Archive archive,
               SearchStats stats)
    : Search(std::move(inst), std::move(cfg)) {
  for (const auto& e : archive.entries()) requireAdmissible(*inst_, e.freqs);
  archive_ = std::move(archive);
  stats_ = stats;
  stats_.archiveSize = static_cast<std::int64_t>(archive_.size());
  constructed_ = !archive_.empty();
}

void Search::addMainThreadCpu(double since) { stats_.cpuSeconds += threadCpuSeconds() - since; }

bool Search::insertEvaluated(const FrequencyVector& freqs) {
  return archive_.insert(memo_.at(freqs), freqs);
}

bool Search::evaluateAndInsert(const std::vector<FrequencyVector>& candidates) {
  std::vector<FrequencyVector> fresh;
  std::unordered_set<FrequencyVector, FrequencyHash> queued;
  for (const auto& f : candidates) {
    if (!memo_.contains(f) && queued.insert(f).second) fresh.push_back(f);
  }

  std::vector<ObjectiveVector> results(fresh.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto threads = std::min<std::size_t>(
      cfg_.threads > 0 ? static_cast<std::size_t>(cfg_.threads) : hw, fresh.size());

  if (threads <= 1) {
    for (std::size_t k = 0; k < fresh.size(); ++k) {
      results[k] = evaluateObjectives(*inst_, fresh[k], evalSettings_, &routing_);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex errorMutex;
    std::exception_ptr error;
    std::vector<double> workerCpu(threads, 0.0);
    {
      std::vector<std::jthread> workers;
      workers.reserve(threads);
      for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
          const double start = threadCpuSeconds();
          try {
            for (std::size_t k = next++; k < fresh.size(); k = next++) {
              results[k] = evaluateObjectives(*inst_, fresh[k], evalSettings_, &routing_);
            }
          } catch (...) {
            std::lock_guard lock(errorMutex);
            if (!error) error = std::current_exception();
            next = fresh.size();
          }
          workerCpu[w] = threadCpuSeconds() - start;
        });
      }
    }
    for (double c : workerCpu) stats_.cpuSeconds += c;
    if (error) std::rethrow_exception(error);
  }

  for (std::size_t k = 0; k < fresh.size(); ++k) memo_.emplace(fresh[k], results[k]);
  stats_.evaluations += static_cast<std::int64_t>(fresh.size());
  lastStepEvaluations_ = static_cast<std::int64_t>(fresh.size());

  bool accepted = false;
  for (const auto& f : fresh) accepted = insertEvaluated(f) || accepted;
  stats_.archiveSize = static_cast<std::int64_t>(archive_.size());
  return accepted;
}

void Search::construct() {
  const auto wallStart = std::chrono::steady_clock::now();
  const double cpuStart = threadCpuSeconds();
  const std::size_t n = inst_->customerCount();
  const int horizon = inst_->horizon;

  // Uniform phase. Frequencies above the horizon behave like the horizon
  // itself, so reaching T ends the phase as a rejection would.
  const auto evaluationsBefore = stats_.evaluations;
  int stopValue = horizon + 1;
  for (int j = 1; j <= horizon; ++j) {
    const bool accepted = evaluateAndInsert({FrequencyVector::uniform(n, j)});
    if (!accepted) {
      stopValue = j;
      break;
    }
  }

  std::vector<FrequencyVector> mixed;
  for (int j = 1; j + 1 <= std::min(stopValue, horizon); ++j) {
    for (int s = 0; s < cfg_.mixedSamples; ++s) {
      FrequencyVector f = FrequencyVector::uniform(n, j);
      for (int attempt = 0; attempt < kMixedRedraws; ++attempt) {
        int highs = 0;
        for (std::size_t i = 0; i < n; ++i) {
          f[i] = (rng_() & 1u) ? j + 1 : j;
          highs += f[i] == j + 1;
        }
        // Uniform vectors were already evaluated in the first phase.
        const bool isUniform = highs == 0 || highs == static_cast<int>(n);
        if (!isUniform || n < 2) break;
      }
      mixed.push_back(std::move(f));
    }
  }
  evaluateAndInsert(mixed);
  lastStepEvaluations_ = stats_.evaluations - evaluationsBefore;

  constructed_ = true;
  addMainThreadCpu(cpuStart);
  stats_.elapsedSeconds +=
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wallStart).count();
}

bool Search::improvementStep() {
  if (archive_.empty()) throw ContractError("improvement step needs a nonempty archive");
  const auto wallStart = std::chrono::steady_clock::now();
  const double cpuStart = threadCpuSeconds();

  const auto refs = cfg_.referencePoints();
  const auto reps = pareto::selectRepresentatives(archive_, refs);
  lastStepRepresentatives_ = reps.size();

  std::vector<FrequencyVector> candidates;
  for (std::size_t idx : reps) {
    auto nbs = neighborhood(archive_.entries()[idx].freqs, inst_->horizon);
    std::move(nbs.begin(), nbs.end(), std::back_inserter(candidates));
  }
  const bool improved = evaluateAndInsert(candidates);
  ++stats_.steps;

  addMainThreadCpu(cpuStart);
  stats_.elapsedSeconds +=
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wallStart).count();
  return improved;
}

StopReason Search::run(std::stop_token stop,
                       const std::function<void(const Search&)>& onProgress) {
  const auto wallStart = std::chrono::steady_clock::now();
  if (!constructed_) {
    construct();
    if (onProgress) onProgress(*this);
  }
  const auto stepsAtStart = stats_.steps;
  const auto evalsAtStart = stats_.evaluations;

  while (true) {
    if (stop.stop_requested()) return StopReason::Cancelled;
    if (cfg_.maxSteps && stats_.steps - stepsAtStart >= *cfg_.maxSteps) return StopReason::Budget;
    if (cfg_.maxEvaluations && stats_.evaluations - evalsAtStart >= *cfg_.maxEvaluations) {
      return StopReason::Budget;
    }
    if (cfg_.maxSeconds &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wallStart).count() >=
            *cfg_.maxSeconds) {
      return StopReason::Budget;
    }
    const bool improved = improvementStep();
    if (onProgress) onProgress(*this);
    if (!improved) return StopReason::Converged;
  }
}

void Search::setUserReferencePoints(std::vector<pareto::NormalizedPoint> points) {
  auto next = cfg_;
  next.userRefPoints = std::move(points);
  next.check();
  cfg_ = std::move(next);
}

}  // namespace irp::search
