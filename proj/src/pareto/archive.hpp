#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "model/evaluate.hpp"
#include "model/inventory.hpp"

namespace irp::pareto {

// Both objectives are minimized.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct ArchiveEntry {
  std::uint64_t id = 0;
  ObjectiveVector objectives;
  FrequencyVector freqs;
};

// Mutually nondominated outcomes, kept sorted by inventory ascending (and so
// by distance descending). An outcome equal to a stored one is rejected.
class Archive {
public:
  // Returns true when the candidate was added.
  bool insert(const ObjectiveVector& objectives, const FrequencyVector& freqs);

  // Restores an entry with a known id; same acceptance rule as insert().
  bool restore(std::uint64_t id, const ObjectiveVector& objectives, const FrequencyVector& freqs);

  std::span<const ArchiveEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const ArchiveEntry* find(std::uint64_t id) const;

  // True if every entry of other is matched or dominated by an entry here.
  bool weaklyDominates(const Archive& other) const;

private:
  bool accepts(const ObjectiveVector& candidate) const;
  void place(ArchiveEntry entry);

  std::vector<ArchiveEntry> entries_;
  std::uint64_t nextId_ = 1;
};

// Archive export: header then one row per entry, sorted by inventory.
void writeCsv(std::ostream& out, const Archive& archive, std::size_t customers);

}  // namespace irp::pareto
