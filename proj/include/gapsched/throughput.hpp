#pragma once

#include <cstdint>

#include "gapsched/core.hpp"

namespace gapsched {

struct ThroughputResult {
  std::int64_t value = 0;  // scheduled job count, or weight when weighted
  Schedule schedule;       // jobs left out are unassigned
  std::size_t states = 0;
};

// Largest throughput over schedules with at most `gaps` gaps. Jobs whose
// window is empty are never scheduled.
ThroughputResult max_throughput(const Instance& instance, std::int64_t gaps, bool weighted = false);

struct MinGapsThroughputResult {
  std::int64_t gaps = 0;
  std::int64_t value = 0;  // throughput reached by the witness
  Schedule schedule;
};

// Fewest gaps with throughput at least m. Throws InfeasibleError when m
// exceeds the best throughput of any schedule.
MinGapsThroughputResult min_gaps_for_throughput(const Instance& instance, std::int64_t m,
                                                bool weighted = false);

}  // namespace gapsched
