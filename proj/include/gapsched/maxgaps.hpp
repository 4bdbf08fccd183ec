#pragma once

#include <cstdint>

#include "gapsched/core.hpp"

namespace gapsched {

struct MaxGapsResult {
  std::int64_t gaps = 0;
  Schedule schedule;
  std::size_t states = 0;  // memoized (k,u,v) cells
};

// Most gaps over schedules of all jobs. Throws InfeasibleError when no
// such schedule exists.
MaxGapsResult max_gaps(const Instance& instance);

// Rewrites a feasible schedule until (i) no job has a gap of length >= 3
// between its release and its slot and (ii) every block after the first
// either runs all its jobs at release or follows a gap of length 1. The
// gap count never decreases.
Schedule lemma2_normalize(const Schedule& schedule, const Instance& instance);

}  // namespace gapsched
