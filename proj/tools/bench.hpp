#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gapsched::bench {

struct BenchOptions {
  std::string suite;
  std::vector<std::size_t> sizes;
  int repetitions = 3;
  std::uint64_t seed = 1;
  std::int64_t gaps = 100;  // budget for the gap-budgeted suites
  std::chrono::milliseconds naive_budget{60000};
};

struct BenchCell {
  double ms = 0;          // median wall time, or an extrapolation when incomplete
  bool complete = true;
};

struct BenchRow {
  std::size_t n = 0;
  std::vector<BenchCell> cells;
};

struct BenchTable {
  std::string suite;
  std::vector<std::string> columns;
  std::vector<BenchRow> rows;
};

std::vector<std::string> suites();

// Throws std::invalid_argument for an unknown suite.
BenchTable run(const BenchOptions& options);

std::string to_csv(const BenchTable& table);

}  // namespace gapsched::bench
