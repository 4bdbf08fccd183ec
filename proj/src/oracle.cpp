#include "gapsched/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace gapsched {

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::min_gaps: return "min-gaps";
    case Objective::max_gaps: return "max-gaps";
    case Objective::min_max_gap: return "min-max-gap";
    case Objective::max_throughput: return "max-throughput";
    case Objective::min_gaps_throughput: return "min-gaps-throughput";
    case Objective::min_total_flow: return "min-total-flow";
    case Objective::min_gaps_total_flow: return "min-gaps-flow";
    case Objective::min_gaps_max_flow: return "min-gaps-maxflow";
    case Objective::min_max_flow: return "min-max-flow";
  }
  return "unknown";
}

OracleLimits OracleLimits::from_env() {
  OracleLimits lim;
  const char* env = std::getenv("GAPSCHED_ORACLE_CAP");
  if (!env || !*env) return lim;
  std::string s(env);
  try {
    auto comma = s.find(',');
    lim.max_jobs = std::stoul(s.substr(0, comma));
    if (comma != std::string::npos) lim.max_universe = std::stoll(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw InvalidArgument("GAPSCHED_ORACLE_CAP must be \"N\" or \"N,U\", got \"" + s + "\"");
  }
  return lim;
}

namespace {

struct Leaf {
  std::int64_t gaps = 0;
  std::int64_t max_sep = 0;
  std::int64_t total = 0;
  std::int64_t max_flow = 0;
};

constexpr Slot kNone = std::numeric_limits<Slot>::min();

void check_jobs(const Instance& inst, const OracleLimits& lim) {
  if (inst.size() > lim.max_jobs) {
    throw InvalidArgument("oracle refuses " + std::to_string(inst.size()) + " jobs (cap " +
                          std::to_string(lim.max_jobs) + ")");
  }
}

void check_universe(Slot lo, Slot hi, const OracleLimits& lim) {
  if (hi - lo + 1 > lim.max_universe) {
    throw InvalidArgument("oracle refuses a universe of " + std::to_string(hi - lo + 1) +
                          " slots (cap " + std::to_string(lim.max_universe) + ")");
  }
}

// Every busy set on which the given jobs can all run, each realized by
// EDF. Busy sets come in lexicographic order.
class DeadlineEnum {
 public:
  DeadlineEnum(const Instance& inst, std::vector<std::size_t> jobs) : inst_(inst), jobs_(std::move(jobs)) {
    std::stable_sort(jobs_.begin(), jobs_.end(), [&](std::size_t a, std::size_t b) {
      return inst_.jobs[a].release < inst_.jobs[b].release;
    });
    slots_.assign(inst.size(), kNone);
  }

  template <class F>
  void run(F&& on_leaf) {
    if (jobs_.empty()) {
      on_leaf(Leaf{}, slots_);
      return;
    }
    Slot hi = kNone;
    for (auto j : jobs_) hi = std::max(hi, *inst_.jobs[j].deadline);
    hi_ = hi;
    dfs(inst_.jobs[jobs_[0]].release, 0, kNone, Leaf{}, on_leaf);
  }

 private:
  template <class F>
  void dfs(Slot t, std::uint32_t done, Slot last, Leaf acc, F& on_leaf) {
    const std::uint32_t full = (1u << jobs_.size()) - 1;
    if (done == full) {
      on_leaf(acc, slots_);
      return;
    }
    if (t > hi_) return;
    std::optional<std::size_t> edf;
    std::optional<Slot> next_release;
    for (std::size_t q = 0; q < jobs_.size(); ++q) {
      if (done >> q & 1) continue;
      const Job& job = inst_.jobs[jobs_[q]];
      if (job.release > t) {
        if (!next_release) next_release = job.release;
        continue;
      }
      if (!edf || *job.deadline < *inst_.jobs[jobs_[*edf]].deadline) edf = q;
    }
    if (edf) {
      if (*inst_.jobs[jobs_[*edf]].deadline < t) return;
      const std::size_t j = jobs_[*edf];
      Leaf next = acc;
      if (last != kNone) {
        if (t - last > 1) ++next.gaps;
        next.max_sep = std::max(next.max_sep, t - last);
      }
      slots_[j] = t;
      dfs(t + 1, done | 1u << *edf, t, next, on_leaf);
      slots_[j] = kNone;
      dfs(t + 1, done, last, acc, on_leaf);
    } else if (next_release) {
      dfs(*next_release, done, last, acc, on_leaf);
    }
  }

  const Instance& inst_;
  std::vector<std::size_t> jobs_;
  std::vector<Slot> slots_;
  Slot hi_ = 0;
};

// Busy sets for release-only jobs in [min r, max r + n]; the k-th busy
// slot goes to the k-th released job.
class FlowEnum {
 public:
  explicit FlowEnum(const Instance& inst) : inst_(inst), order_(inst.size()) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return inst_.jobs[a].release < inst_.jobs[b].release;
    });
    slots_.assign(inst.size(), kNone);
    if (!order_.empty()) {
      lo_ = inst_.jobs[order_.front()].release;
      hi_ = inst_.jobs[order_.back()].release + static_cast<Slot>(inst.size());
    }
  }

  Slot lo() const { return lo_; }
  Slot hi() const { return hi_; }

  template <class F>
  void run(F&& on_leaf) {
    if (order_.empty()) {
      on_leaf(Leaf{}, slots_);
      return;
    }
    dfs(lo_, 0, kNone, Leaf{}, on_leaf);
  }

 private:
  template <class F>
  void dfs(Slot t, std::size_t i, Slot last, Leaf acc, F& on_leaf) {
    if (i == order_.size()) {
      on_leaf(acc, slots_);
      return;
    }
    if (t > hi_) return;
    const std::size_t j = order_[i];
    const Slot r = inst_.jobs[j].release;
    if (r > t) {
      dfs(r, i, last, acc, on_leaf);
      return;
    }
    Leaf next = acc;
    if (last != kNone && t - last > 1) ++next.gaps;
    next.total += t - r;
    next.max_flow = std::max(next.max_flow, t - r);
    slots_[j] = t;
    dfs(t + 1, i + 1, t, next, on_leaf);
    slots_[j] = kNone;
    dfs(t + 1, i, last, acc, on_leaf);
  }

  const Instance& inst_;
  std::vector<std::size_t> order_;
  std::vector<Slot> slots_;
  Slot lo_ = 0, hi_ = 0;
};

Schedule to_schedule(const std::vector<Slot>& slots) {
  Schedule s(slots.size());
  for (std::size_t j = 0; j < slots.size(); ++j) {
    if (slots[j] != kNone) s.assign(j, slots[j]);
  }
  return s;
}

void require_deadlines(const Instance& inst) {
  if (!inst.has_deadlines()) throw InvalidArgument("oracle: objective needs deadlines on every job");
}

void check_deadline_universe(const Instance& inst, const OracleLimits& lim) {
  check_jobs(inst, lim);
  if (inst.empty()) return;
  Slot lo = inst.jobs[0].release, hi = *inst.jobs[0].deadline;
  for (const Job& j : inst.jobs) {
    lo = std::min(lo, j.release);
    hi = std::max(hi, *j.deadline);
  }
  check_universe(lo, hi, lim);
}

std::vector<std::size_t> all_jobs(const Instance& inst) {
  std::vector<std::size_t> v(inst.size());
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

struct SubsetBest {
  std::int64_t weight = 0;
  std::int64_t gaps = 0;
  std::vector<Slot> slots;
};

// Least-gap schedule of every schedulable job subset.
std::vector<SubsetBest> subsets(const Instance& inst, bool weighted) {
  std::vector<SubsetBest> out;
  const std::size_t n = inst.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> jobs;
    std::int64_t w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1) {
        jobs.push_back(j);
        w += weighted ? inst.jobs[j].weight : 1;
      }
    }
    std::optional<SubsetBest> best;
    DeadlineEnum(inst, jobs).run([&](const Leaf& leaf, const std::vector<Slot>& slots) {
      if (!best || leaf.gaps < best->gaps) best = SubsetBest{w, leaf.gaps, slots};
    });
    if (best) out.push_back(std::move(*best));
  }
  return out;
}

}  // namespace

DeadlineProfile deadline_profile(const Instance& inst, const OracleLimits& limits) {
  require_deadlines(inst);
  check_deadline_universe(inst, limits);
  DeadlineProfile p;
  DeadlineEnum(inst, all_jobs(inst)).run([&](const Leaf& leaf, const std::vector<Slot>&) {
    if (!p.feasible) {
      p.feasible = true;
      p.min_gaps = p.max_gaps = leaf.gaps;
      p.min_max_separation = leaf.max_sep;
      return;
    }
    p.min_gaps = std::min(p.min_gaps, leaf.gaps);
    p.max_gaps = std::max(p.max_gaps, leaf.gaps);
    p.min_max_separation = std::min(p.min_max_separation, leaf.max_sep);
  });
  return p;
}

std::optional<std::int64_t> ThroughputProfile::gaps_for(std::int64_t m) const {
  for (std::size_t g = 0; g < best.size(); ++g) {
    if (best[g] >= m) return static_cast<std::int64_t>(g);
  }
  return std::nullopt;
}

ThroughputProfile throughput_profile(const Instance& inst, bool weighted, const OracleLimits& limits) {
  require_deadlines(inst);
  check_deadline_universe(inst, limits);
  ThroughputProfile p;
  p.best.assign(inst.size() + 1, 0);
  for (const SubsetBest& s : subsets(inst, weighted)) {
    for (auto g = static_cast<std::size_t>(s.gaps); g < p.best.size(); ++g) {
      p.best[g] = std::max(p.best[g], s.weight);
    }
  }
  return p;
}

namespace {

std::optional<std::int64_t> best_upto(const std::vector<std::optional<std::int64_t>>& v,
                                      std::int64_t gaps) {
  std::optional<std::int64_t> out;
  for (std::int64_t g = 0; g <= gaps && g < static_cast<std::int64_t>(v.size()); ++g) {
    if (v[g] && (!out || *v[g] < *out)) out = v[g];
  }
  return out;
}

std::optional<std::int64_t> first_within(const std::vector<std::optional<std::int64_t>>& v,
                                         std::int64_t f) {
  for (std::size_t g = 0; g < v.size(); ++g) {
    if (v[g] && *v[g] <= f) return static_cast<std::int64_t>(g);
  }
  return std::nullopt;
}

}  // namespace

std::int64_t FlowProfile::min_total(std::int64_t gaps) const { return best_upto(total, gaps).value_or(0); }
std::int64_t FlowProfile::min_max(std::int64_t gaps) const { return best_upto(max, gaps).value_or(0); }
std::optional<std::int64_t> FlowProfile::gaps_for_total(std::int64_t f) const { return first_within(total, f); }
std::optional<std::int64_t> FlowProfile::gaps_for_max(std::int64_t f) const { return first_within(max, f); }

FlowProfile flow_profile(const Instance& inst, const OracleLimits& limits) {
  check_jobs(inst, limits);
  FlowEnum e(inst);
  if (!inst.empty()) check_universe(e.lo(), e.hi(), limits);
  FlowProfile p;
  p.total.resize(std::max<std::size_t>(inst.size(), 1));
  p.max.resize(p.total.size());
  e.run([&](const Leaf& leaf, const std::vector<Slot>&) {
    auto& t = p.total[leaf.gaps];
    if (!t || leaf.total < *t) t = leaf.total;
    auto& m = p.max[leaf.gaps];
    if (!m || leaf.max_flow < *m) m = leaf.max_flow;
  });
  return p;
}

OracleResult oracle_solve(const Instance& inst, const OracleQuery& q, const OracleLimits& limits) {
  OracleResult out;
  out.schedule = Schedule(inst.size());
  // Strictly better values replace the incumbent, so ties keep the
  // lexicographically first busy set.
  auto keep = [&](std::int64_t value, const std::vector<Slot>& slots, bool minimize) {
    if (!out.value || (minimize ? value < *out.value : value > *out.value)) {
      out.value = value;
      out.schedule = to_schedule(slots);
    }
  };
  switch (q.objective) {
    case Objective::min_gaps:
    case Objective::max_gaps:
    case Objective::min_max_gap: {
      require_deadlines(inst);
      check_deadline_universe(inst, limits);
      DeadlineEnum(inst, all_jobs(inst)).run([&](const Leaf& leaf, const std::vector<Slot>& slots) {
        if (q.objective == Objective::min_gaps) keep(leaf.gaps, slots, true);
        if (q.objective == Objective::max_gaps) keep(leaf.gaps, slots, false);
        if (q.objective == Objective::min_max_gap) keep(leaf.max_sep, slots, true);
      });
      return out;
    }
    case Objective::max_throughput:
    case Objective::min_gaps_throughput: {
      require_deadlines(inst);
      check_deadline_universe(inst, limits);
      for (const SubsetBest& s : subsets(inst, q.weighted)) {
        if (q.objective == Objective::max_throughput) {
          if (s.gaps <= q.parameter) keep(s.weight, s.slots, false);
        } else if (s.weight >= q.parameter) {
          keep(s.gaps, s.slots, true);
        }
      }
      return out;
    }
    default:
      break;
  }
  check_jobs(inst, limits);
  FlowEnum e(inst);
  if (!inst.empty()) check_universe(e.lo(), e.hi(), limits);
  e.run([&](const Leaf& leaf, const std::vector<Slot>& slots) {
    switch (q.objective) {
      case Objective::min_total_flow:
        if (leaf.gaps <= q.parameter) keep(leaf.total, slots, true);
        break;
      case Objective::min_gaps_total_flow:
        if (leaf.total <= q.parameter) keep(leaf.gaps, slots, true);
        break;
      case Objective::min_gaps_max_flow:
        if (leaf.max_flow <= q.parameter) keep(leaf.gaps, slots, true);
        break;
      case Objective::min_max_flow:
        if (leaf.gaps <= q.parameter) keep(leaf.max_flow, slots, true);
        break;
      default:
        break;
    }
  });
  return out;
}

}  // namespace gapsched
