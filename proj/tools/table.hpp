#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace casimir::cli {

enum class Unit { none, length, frequency, force, energy };

/// Multipliers from reduced units to SI.
struct UnitScale {
  double length = 1.0;
  double frequency = 1.0;
  double force = 1.0;
  double energy = 1.0;

  static UnitScale reduced() { return {}; }
  static UnitScale si(double reference_frequency);
  double factor(Unit unit) const;
};

struct Column {
  std::string name;
  Unit unit = Unit::none;
};

using Cell = std::variant<double, long, std::string>;

class Table {
 public:
  explicit Table(std::vector<Column> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  std::size_t size() const noexcept { return rows_.size(); }

  /// CSV with a header row and LF endings, or a JSON array of records.
  void write(std::ostream& out, OutputFormat format, const UnitScale& scale) const;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// CASIMIR_STACK_THREADS if set to a positive integer, else the hardware
/// concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace casimir::cli
