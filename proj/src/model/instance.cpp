#include "model/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "model/errors.hpp"

namespace irp {

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    const auto& v = violations[k];
    if (k != 0) out << "; ";
    if (v.customerId >= 0) out << "customer " << v.customerId << ": ";
    if (v.period > 0) out << "period " << v.period << ": ";
    out << v.message;
  }
  return out.str();
}

ValidationReport validateInstance(const Instance& inst) {
  const auto horizon = static_cast<std::size_t>(std::max(inst.horizon, 0));
  for (const auto& c : inst.customers) {
    if (c.demands.size() != horizon) {
      std::ostringstream msg;
      msg << "customer " << c.id << " has " << c.demands.size()
          << " demand entries, horizon is " << inst.horizon;
      throw FormatError(msg.str());
    }
  }

  ValidationReport report;
  auto add = [&](int customer, int period, std::string message) {
    report.violations.push_back({customer, period, std::move(message)});
  };

  if (inst.horizon < 1) add(-1, 0, "horizon must be ≥ 1");
  if (inst.vehicleCap <= 0) add(-1, 0, "vehicle capacity must be positive");
  if (inst.customers.empty()) add(-1, 0, "instance has no customers");

  std::set<int> ids;
  for (const auto& c : inst.customers) {
    if (!ids.insert(c.id).second) add(c.id, 0, "duplicate customer id");
    if (c.storageCap <= 0) add(c.id, 0, "storage cap must be positive");
    if (c.initialInventory < 0)
      add(c.id, 0, "initial inventory is negative");
    else if (c.initialInventory > c.storageCap)
      add(c.id, 0, "initial inventory exceeds storage cap");

    for (std::size_t t = 0; t < c.demands.size(); ++t) {
      const auto d = c.demands[t];
      const int period = static_cast<int>(t) + 1;
      if (d < 0) {
        add(c.id, period, "negative demand");
        continue;
      }
      if (c.storageCap > 0 && d > c.storageCap)
        add(c.id, period, "demand exceeds storage cap");
      if (inst.vehicleCap > 0 && d > inst.vehicleCap)
        add(c.id, period, "demand exceeds vehicle cap");
    }
  }
  return report;
}

void requireValid(const Instance& inst) {
  const auto report = validateInstance(inst);
  if (!report.ok()) throw ValidationError(report.summary());
}

}  // namespace irp
