#include "pareto/archive.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>

namespace irp::pareto {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.inventory <= b.inventory && a.distance <= b.distance &&
         (a.inventory < b.inventory || a.distance < b.distance);
}

bool Archive::accepts(const ObjectiveVector& candidate) const {
  return std::none_of(entries_.begin(), entries_.end(), [&](const ArchiveEntry& e) {
    return e.objectives == candidate || dominates(e.objectives, candidate);
  });
}

void Archive::place(ArchiveEntry entry) {
  std::erase_if(entries_,
                [&](const ArchiveEntry& e) { return dominates(entry.objectives, e.objectives); });
  auto pos = std::lower_bound(entries_.begin(), entries_.end(), entry.objectives.inventory,
                              [](const ArchiveEntry& e, double inv) {
                                return e.objectives.inventory < inv;
                              });
  entries_.insert(pos, std::move(entry));
}

bool Archive::insert(const ObjectiveVector& objectives, const FrequencyVector& freqs) {
  if (!accepts(objectives)) return false;
  place({nextId_++, objectives, freqs});
  return true;
}

bool Archive::restore(std::uint64_t id, const ObjectiveVector& objectives,
                      const FrequencyVector& freqs) {
  if (!accepts(objectives)) return false;
  place({id, objectives, freqs});
  nextId_ = std::max(nextId_, id + 1);
  return true;
}

const ArchiveEntry* Archive::find(std::uint64_t id) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [id](const ArchiveEntry& e) { return e.id == id; });
  return it == entries_.end() ? nullptr : &*it;
}

bool Archive::weaklyDominates(const Archive& other) const {
  return std::all_of(other.entries_.begin(), other.entries_.end(), [&](const ArchiveEntry& o) {
    return std::any_of(entries_.begin(), entries_.end(), [&](const ArchiveEntry& e) {
      return e.objectives == o.objectives || dominates(e.objectives, o.objectives);
    });
  });
}

void writeCsv(std::ostream& out, const Archive& archive, std::size_t customers) {
  out << "inventory,distance";
  for (std::size_t i = 1; i <= customers; ++i) out << ",pi_" << i;
  out << '\n';
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : archive.entries()) {
    out << e.objectives.inventory << ',' << e.objectives.distance;
    for (int f : e.freqs) out << ',' << f;
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace irp::pareto
