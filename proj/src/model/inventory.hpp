#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "model/instance.hpp"

namespace irp {

// Per-customer delivery frequencies: how many consecutive periods of demand
// a triggered delivery tries to cover. Admissible values are 1..T.
class FrequencyVector {
public:
  FrequencyVector() = default;
  explicit FrequencyVector(std::vector<int> values) : values_(std::move(values)) {}
  FrequencyVector(std::initializer_list<int> values) : values_(values) {}

  static FrequencyVector uniform(std::size_t n, int value) {
    return FrequencyVector(std::vector<int>(n, value));
  }

  std::size_t size() const { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }
  int& operator[](std::size_t i) { return values_[i]; }
  std::span<const int> values() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;
  friend auto operator<=>(const FrequencyVector&, const FrequencyVector&) = default;

private:
  std::vector<int> values_;
};

struct FrequencyHash {
  std::size_t operator()(const FrequencyVector& f) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : f) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Throws ContractError unless freqs has one entry per customer, each in 1..T.
void requireAdmissible(const Instance& inst, const FrequencyVector& freqs);

// Dense customers × periods table; column t-1 holds period t.
template <class T>
class PeriodMatrix {
public:
  PeriodMatrix() = default;
  PeriodMatrix(std::size_t rows, std::size_t periods)
      : rows_(rows), periods_(periods), data_(rows * periods, T{}) {}

  std::size_t rows() const { return rows_; }
  std::size_t periods() const { return periods_; }

  T& at(std::size_t row, int period) {
    return data_[row * periods_ + static_cast<std::size_t>(period - 1)];
  }
  const T& at(std::size_t row, int period) const {
    return data_[row * periods_ + static_cast<std::size_t>(period - 1)];
  }
  std::span<const T> row(std::size_t r) const {
    return std::span<const T>(data_).subspan(r * periods_, periods_);
  }

  friend bool operator==(const PeriodMatrix&, const PeriodMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t periods_ = 0;
  std::vector<T> data_;
};

struct InventoryTrajectory {
  PeriodMatrix<Quantity> levels;      // L_it, stock after period t's consumption
  PeriodMatrix<Quantity> inflow;      // goods received in period t
  PeriodMatrix<Quantity> outflow;     // goods consumed in period t
  PeriodMatrix<Quantity> deliveries;  // shipped quantity q_it

  Quantity totalInventory() const;
  Quantity periodInventory(int period) const;
};

// Quantity shipped to customer i in period t when it is triggered, given the
// stock carried in from the previous period. The demand window is truncated
// at the horizon. Precondition: demand(i, t) > levelBefore.
Quantity deliveryQuantity(const Instance& inst, std::size_t customer, int period,
                          const FrequencyVector& freqs, Quantity levelBefore);

// Runs the stock flow over the horizon, shipping only to customers whose
// demand exceeds their carried stock.
InventoryTrajectory simulateInventory(const Instance& inst, const FrequencyVector& freqs);

}  // namespace irp
