#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gapsched/core.hpp"

namespace gapsched {

// Release times sorted ascending, with prefix sums R_b = r_1 + ... + r_b.
class FlowInstance {
 public:
  FlowInstance() = default;
  explicit FlowInstance(std::vector<Slot> releases);  // sorts its input

  std::size_t size() const { return r_.size(); }
  std::span<const Slot> releases() const { return r_; }
  Slot release(std::size_t j) const { return r_[j - 1]; }  // 1-based
  std::int64_t prefix(std::size_t b) const { return prefix_[b]; }
  bool distinct() const;

 private:
  std::vector<Slot> r_;
  std::vector<std::int64_t> prefix_{0};
};

// Flow of the block holding jobs i..j (1-based) with job j at r_j.
std::int64_t block_cost(const FlowInstance& inst, std::size_t i, std::size_t j);

enum class FlowEngine { naive, monge };

struct BlockSchedule {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // 1-based [first, last]
  std::vector<Slot> slots;                                   // per sorted job
};

struct TotalFlowResult {
  std::int64_t total_flow = 0;
  BlockSchedule schedule;
};

// Least total flow with at most `gaps` gaps. Equal releases are allowed:
// they are spread to r'_j = max(r_j, r'_{j-1}+1), which shifts every
// schedule's flow by the same constant, and the reported value is in the
// input's own coordinates.
TotalFlowResult min_total_flow(const FlowInstance& inst, std::int64_t gaps,
                               FlowEngine engine = FlowEngine::monge);

// Naive engine under a wall-clock budget; nullopt when it runs out.
struct TimedFlowRun {
  std::optional<TotalFlowResult> result;
  double progress = 0.0;
};
TimedFlowRun min_total_flow_naive_timed(const FlowInstance& inst, std::int64_t gaps,
                                        std::chrono::nanoseconds budget);

struct GapCountResult {
  std::int64_t gaps = 0;
  std::vector<Slot> slots;  // per sorted job
};

// Fewest gaps with total flow at most f.
GapCountResult min_gaps_total_flow(const FlowInstance& inst, std::int64_t f);

// Fewest gaps with every job's flow at most f. Throws InfeasibleError
// (carrying the sorted index of the late job) when even the greedy
// left-packed schedule breaks the bound.
GapCountResult min_gaps_max_flow(std::span<const Slot> sorted_releases, std::int64_t f);

// Decision form used by searches: gap count, or nullopt if infeasible.
std::optional<std::int64_t> min_gaps_max_flow_count(std::span<const Slot> sorted_releases,
                                                    std::int64_t f);

struct MaxFlowResult {
  std::int64_t max_flow = 0;
  std::int64_t gaps = 0;
  std::vector<Slot> slots;  // per sorted job
};

// Least maximum flow with at most `gaps` gaps.
MaxFlowResult min_max_flow(std::span<const Slot> sorted_releases, std::int64_t gaps);

// Sorted axes X = {r_j - j} and Y = (-X) ∪ {1..n} whose pairwise sums
// contain every optimal maximum flow.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> max_flow_candidate_axes(
    std::span<const Slot> sorted_releases);

// Instance-level adapters: jobs are ordered by (release, index); slots are
// mapped back to input positions.
struct FlowSolve {
  std::int64_t value = 0;
  Schedule schedule;
};
FlowSolve solve_min_total_flow(const Instance& inst, std::int64_t gaps,
                               FlowEngine engine = FlowEngine::monge);
FlowSolve solve_min_gaps_total_flow(const Instance& inst, std::int64_t f);
FlowSolve solve_min_gaps_max_flow(const Instance& inst, std::int64_t f);
FlowSolve solve_min_max_flow(const Instance& inst, std::int64_t gaps);

}  // namespace gapsched
