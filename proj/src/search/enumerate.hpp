#pragma once

#include <cstdint>

#include "model/instance.hpp"
#include "pareto/archive.hpp"

namespace irp::search {

inline constexpr std::uint64_t kEnumerationLimit = 1'000'000;

struct EnumerationResult {
  pareto::Archive front;
  std::uint64_t evaluations = 0;
};

// True nondominated set over every frequency vector in {1..maxFreq}^n, with
// each period routed by the exact oracle. Throws ContractError when
// maxFreq^n exceeds kEnumerationLimit, maxFreq is outside 1..T, or the
// instance has more customers than the oracle accepts.
EnumerationResult enumerateFront(const Instance& inst, int maxFreq, int threads = 0);

}  // namespace irp::search
