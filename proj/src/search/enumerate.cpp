#include "search/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "model/errors.hpp"
#include "model/evaluate.hpp"

namespace irp::search {

EnumerationResult enumerateFront(const Instance& inst, int maxFreq, int threads) {
  requireValid(inst);
  const std::size_t n = inst.customerCount();
  if (maxFreq < 1 || maxFreq > inst.horizon) {
    throw ContractError("max frequency must lie in 1.." + std::to_string(inst.horizon));
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<std::uint64_t>(maxFreq);
    if (total > kEnumerationLimit) {
      throw ContractError("enumeration of " + std::to_string(maxFreq) + "^" + std::to_string(n) +
                          " vectors exceeds the limit of " + std::to_string(kEnumerationLimit));
    }
  }
  if (n > vrp::kOracleMaxStops) {
    throw ContractError("enumeration routes exactly and accepts at most " +
                        std::to_string(vrp::kOracleMaxStops) + " customers");
  }

  auto decode = [&](std::uint64_t index) {
    FrequencyVector f = FrequencyVector::uniform(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = 1 + static_cast<int>(index % static_cast<std::uint64_t>(maxFreq));
      index /= static_cast<std::uint64_t>(maxFreq);
    }
    return f;
  };

  const EvalSettings settings{vrp::Solver::Exact, 0, {}};
  RoutingCache cache;
  std::vector<ObjectiveVector> results(total);
  std::atomic<std::uint64_t> next{0};
  std::mutex errorMutex;
  std::exception_ptr error;
  auto work = [&] {
    try {
      for (std::uint64_t k = next++; k < total; k = next++) {
        results[k] = evaluateObjectives(inst, decode(k), settings, &cache);
      }
    } catch (...) {
      std::lock_guard lock(errorMutex);
      if (!error) error = std::current_exception();
      next = total;
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = std::min<std::uint64_t>(threads > 0 ? threads : hw, total);
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);

  EnumerationResult out;
  out.evaluations = total;
  for (std::uint64_t k = 0; k < total; ++k) out.front.insert(results[k], decode(k));
  return out;
}

}  // namespace irp::search
