#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace irp {

// Goods are counted in whole units throughout.
using Quantity = std::int64_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double euclidean(Point a, Point b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Customer {
  int id = 0;
  Point location;
  Quantity storageCap = 0;
  Quantity initialInventory = 0;
  std::vector<Quantity> demands;  // one entry per period, t = 1..T
};

struct Instance {
  std::string name;
  Point depot;
  Quantity vehicleCap = 0;
  int horizon = 0;
  std::vector<Customer> customers;

  std::size_t customerCount() const { return customers.size(); }

  // 1-based period, matching the problem statement.
  Quantity demand(std::size_t customer, int period) const {
    return customers[customer].demands[static_cast<std::size_t>(period - 1)];
  }
};

struct Violation {
  int customerId = -1;  // -1 when the violation is instance-wide
  int period = 0;       // 0 when not tied to a period
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Throws FormatError when dimensions are inconsistent (demand rows of the
// wrong length); every other problem is reported as a violation.
ValidationReport validateInstance(const Instance& inst);

// Throws ValidationError carrying the report summary if the instance is not
// valid.
void requireValid(const Instance& inst);

}  // namespace irp
