#include "model/inventory.hpp"

#include <algorithm>
#include <sstream>

#include "model/errors.hpp"

namespace irp {

void requireAdmissible(const Instance& inst, const FrequencyVector& freqs) {
  if (freqs.size() != inst.customerCount()) {
    std::ostringstream msg;
    msg << "frequency vector has " << freqs.size() << " entries, instance has "
        << inst.customerCount() << " customers";
    throw ContractError(msg.str());
  }
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i] < 1 || freqs[i] > inst.horizon) {
      std::ostringstream msg;
      msg << "frequency " << freqs[i] << " of customer " << inst.customers[i].id
          << " outside 1.." << inst.horizon;
      throw ContractError(msg.str());
    }
  }
}

Quantity InventoryTrajectory::totalInventory() const {
  Quantity total = 0;
  for (std::size_t i = 0; i < levels.rows(); ++i) {
    for (auto v : levels.row(i)) total += v;
  }
  return total;
}

Quantity InventoryTrajectory::periodInventory(int period) const {
  Quantity total = 0;
  for (std::size_t i = 0; i < levels.rows(); ++i) total += levels.at(i, period);
  return total;
}

Quantity deliveryQuantity(const Instance& inst, std::size_t customer, int period,
                          const FrequencyVector& freqs, Quantity levelBefore) {
  if (period < 1 || period > inst.horizon) {
    std::ostringstream msg;
    msg << "period " << period << " outside 1.." << inst.horizon;
    throw std::out_of_range(msg.str());
  }
  const auto& c = inst.customers[customer];
  const int last = std::min(inst.horizon, period - 1 + freqs[customer]);
  Quantity window = 0;
  for (int l = period; l <= last; ++l) window += inst.demand(customer, l);
  return std::min({window - levelBefore, c.storageCap - levelBefore, inst.vehicleCap});
}

InventoryTrajectory simulateInventory(const Instance& inst, const FrequencyVector& freqs) {
  requireAdmissible(inst, freqs);
  const std::size_t n = inst.customerCount();
  const auto periods = static_cast<std::size_t>(inst.horizon);

  InventoryTrajectory traj{PeriodMatrix<Quantity>(n, periods), PeriodMatrix<Quantity>(n, periods),
                           PeriodMatrix<Quantity>(n, periods), PeriodMatrix<Quantity>(n, periods)};

  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = inst.customers[i];
    Quantity level = c.initialInventory;
    for (int t = 1; t <= inst.horizon; ++t) {
      const Quantity demand = inst.demand(i, t);
      Quantity q = 0;
      if (demand > level) q = deliveryQuantity(inst, i, t, freqs, level);
      const Quantity in = std::min(q, c.storageCap - level);
      const Quantity available = level + in;
      const Quantity out = std::min(demand, available);
      level = available - out;

      traj.deliveries.at(i, t) = q;
      traj.inflow.at(i, t) = in;
      traj.outflow.at(i, t) = out;
      traj.levels.at(i, t) = level;
    }
  }
  return traj;
}

}  // namespace irp
