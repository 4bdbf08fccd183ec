#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapsched/core.hpp"

namespace gapsched {

enum class Objective {
  min_gaps,
  max_gaps,
  min_max_gap,          // max separation
  max_throughput,       // parameter: gap budget
  min_gaps_throughput,  // parameter: throughput floor
  min_total_flow,       // parameter: gap budget
  min_gaps_total_flow,  // parameter: total-flow bound
  min_gaps_max_flow,    // parameter: max-flow bound
  min_max_flow,         // parameter: gap budget
};

std::string to_string(Objective objective);

// Enumeration limits: jobs, and slots in the searched universe
// ([min r, max d] with deadlines, [min r, max r + n] without).
struct OracleLimits {
  std::size_t max_jobs = 8;
  std::int64_t max_universe = 16;

  // Defaults overridden by GAPSCHED_ORACLE_CAP="N" or "N,U".
  static OracleLimits from_env();
};

struct OracleQuery {
  Objective objective = Objective::min_gaps;
  std::int64_t parameter = 0;
  bool weighted = false;
};

struct OracleResult {
  std::optional<std::int64_t> value;  // nullopt when nothing qualifies
  Schedule schedule;
};

// Exact optimum by exhaustive enumeration. Throws InvalidArgument when the
// instance exceeds the limits.
OracleResult oracle_solve(const Instance& instance, const OracleQuery& query,
                          const OracleLimits& limits = OracleLimits::from_env());

// Whole-instance summaries from one enumeration, for batch comparisons.
struct DeadlineProfile {
  bool feasible = false;
  std::int64_t min_gaps = 0, max_gaps = 0, min_max_separation = 0;
};
DeadlineProfile deadline_profile(const Instance& instance, const OracleLimits& limits);

struct ThroughputProfile {
  std::vector<std::int64_t> best;  // best[g]: most throughput with at most g gaps
  std::optional<std::int64_t> gaps_for(std::int64_t m) const;  // smallest g reaching m
};
ThroughputProfile throughput_profile(const Instance& instance, bool weighted,
                                     const OracleLimits& limits);

// Indexed by exact gap count; nullopt where no schedule has that count.
struct FlowProfile {
  std::vector<std::optional<std::int64_t>> total;  // least total flow with exactly g gaps
  std::vector<std::optional<std::int64_t>> max;    // least max flow with exactly g gaps
  std::int64_t min_total(std::int64_t gaps) const;
  std::int64_t min_max(std::int64_t gaps) const;
  std::optional<std::int64_t> gaps_for_total(std::int64_t f) const;
  std::optional<std::int64_t> gaps_for_max(std::int64_t f) const;
};
FlowProfile flow_profile(const Instance& instance, const OracleLimits& limits);

}  // namespace gapsched
