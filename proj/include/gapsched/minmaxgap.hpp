#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gapsched/core.hpp"
#include "gapsched/rational.hpp"

namespace gapsched {

struct MinMaxGapResult {
  std::int64_t max_separation = 0;  // max difference of consecutive busy slots
  std::int64_t max_idle = 0;
  Schedule schedule;
  Rational lambda_star;                     // continuous optimum of the job windows
  std::optional<std::int64_t> rounded;      // separation of the rounded continuous witness
};

// Schedule of all jobs minimizing the largest distance between consecutive
// busy slots. The integer search over separations is authoritative; the
// rounded continuous witness is reported next to it. Throws
// InfeasibleError when no schedule exists.
MinMaxGapResult min_max_gap(const Instance& instance);

// Greedy decision for separation sigma on a normalized deadline-sorted
// instance: slots per job, or nullopt.
std::optional<std::vector<Slot>> separation_viable(const Instance& normalized, std::int64_t sigma);

}  // namespace gapsched
