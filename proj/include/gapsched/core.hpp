#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gapsched {

using Slot = std::int64_t;
using Weight = std::int64_t;

struct Window {
  Slot first = 0;
  Slot last = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Raised when no schedule satisfies the request. Carries a Hall window
// (more jobs confined to [first,last] than slots) or the offending job.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what,
                           std::optional<Window> window = std::nullopt,
                           std::optional<std::size_t> job = std::nullopt)
      : Error(what), window_(window), job_(job) {}

  const std::optional<Window>& window() const { return window_; }
  const std::optional<std::size_t>& job() const { return job_; }

 private:
  std::optional<Window> window_;
  std::optional<std::size_t> job_;
};

struct Job {
  std::string id;
  Slot release = 0;
  std::optional<Slot> deadline;
  Weight weight = 1;
};

struct Instance {
  std::vector<Job> jobs;

  std::size_t size() const { return jobs.size(); }
  bool empty() const { return jobs.empty(); }
  bool has_deadlines() const;
};

// Jobs get ids "j0", "j1", ... in the given order.
Instance make_instance(const std::vector<std::pair<Slot, Slot>>& windows);
Instance make_release_instance(const std::vector<Slot>& releases);

// Assignment of job indices (positions in an Instance) to slots.
// Unassigned jobs are simply not scheduled.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(std::size_t job_count) : slots_(job_count) {}

  std::size_t job_count() const { return slots_.size(); }
  void assign(std::size_t job, Slot slot) { slots_.at(job) = slot; }
  void unassign(std::size_t job) { slots_.at(job).reset(); }
  bool assigned(std::size_t job) const { return slots_.at(job).has_value(); }
  Slot slot(std::size_t job) const;
  const std::vector<std::optional<Slot>>& slots() const { return slots_; }

  std::size_t scheduled_count() const;
  std::vector<Slot> busy_slots() const;  // sorted ascending

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<std::optional<Slot>> slots_;
};

struct GapStats {
  std::int64_t gap_count = 0;
  std::int64_t max_idle = 0;
  std::int64_t max_separation = 0;
  std::int64_t total_flow = 0;
  std::int64_t max_flow = 0;

  friend bool operator==(const GapStats&, const GapStats&) = default;
};

// Slot-only statistics (flows left at zero). Input need not be sorted.
GapStats gap_stats(std::span<const Slot> busy);
GapStats gap_stats(const Schedule& schedule, const Instance& instance);
std::int64_t count_gaps(std::span<const Slot> sorted_busy);
std::vector<Window> blocks_of(std::span<const Slot> sorted_busy);

struct NormalizedInstance {
  Instance instance;                 // deadline-sorted, distinct r and d
  std::vector<std::size_t> origin;   // normalized index -> input index
  std::vector<std::size_t> removed;  // input indices whose window collapsed
};

NormalizedInstance normalize_distinct(const Instance& instance);

// Feasibility check followed by normalize_distinct; throws InfeasibleError
// with a Hall window when the jobs cannot all be scheduled.
NormalizedInstance normalize_feasible(const Instance& instance);

struct FeasibilityResult {
  bool feasible = false;
  Schedule schedule;                 // EDF schedule when feasible
  std::optional<Window> hall_window; // overloaded window otherwise
};

FeasibilityResult check_feasible(const Instance& instance);

// Window [u,v] (u a release, v a deadline) holding more than v-u+1 job
// windows, or nullopt when the Hall condition holds everywhere.
std::optional<Window> hall_violation(const Instance& instance);

enum class ViolationKind {
  bad_job_count,
  before_release,
  after_deadline,
  slot_collision,
  unscheduled,
  gap_budget,
  total_flow,
  max_flow,
  throughput,
};

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> job;
  std::string message;
};

struct Constraints {
  bool require_all = true;
  std::optional<std::int64_t> max_gaps;
  std::optional<std::int64_t> max_total_flow;
  std::optional<std::int64_t> max_flow;
  std::optional<std::int64_t> min_throughput;
  bool weighted_throughput = false;
};

std::vector<Violation> validate(const Schedule& schedule, const Instance& instance,
                                const Constraints& constraints = {});

// The block [u,v] moves to [u-1,v-1]
// by re-seating a chain of jobs at their releases.
Schedule shift_block_left(const Schedule& schedule, const Instance& instance, Window block);

namespace detail {

// Block-shift chain on plain (job, slot) data. `slot_of` and `release_of`
// index jobs; `job_at` maps busy slots to jobs. Returns the jobs whose
// slot changes with their new slots, or the job blocking the shift.
struct ChainResult {
  std::vector<std::pair<std::size_t, Slot>> moves;
  std::optional<std::size_t> blocking_job;
};

template <class JobAt, class ReleaseOf>
ChainResult shift_chain(Slot u, Slot v, JobAt job_at, ReleaseOf release_of) {
  ChainResult out;
  std::size_t cur = job_at(v);
  if (release_of(cur) >= v) {
    out.blocking_job = cur;
    return out;
  }
  std::vector<std::size_t> chain{cur};
  while (release_of(chain.back()) >= u) {
    chain.push_back(job_at(release_of(chain.back())));
  }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    out.moves.emplace_back(chain[i], release_of(chain[i]));
  }
  out.moves.emplace_back(chain.back(), u - 1);
  return out;
}

}  // namespace detail

}  // namespace gapsched
