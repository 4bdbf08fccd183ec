#include "gapsched/core.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

namespace gapsched {

bool Instance::has_deadlines() const {
  return std::all_of(jobs.begin(), jobs.end(),
                     [](const Job& j) { return j.deadline.has_value(); });
}

Instance make_instance(const std::vector<std::pair<Slot, Slot>>& windows) {
  Instance inst;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    inst.jobs.push_back({"j" + std::to_string(i), windows[i].first, windows[i].second, 1});
  }
  return inst;
}

Instance make_release_instance(const std::vector<Slot>& releases) {
  Instance inst;
  for (std::size_t i = 0; i < releases.size(); ++i) {
    inst.jobs.push_back({"j" + std::to_string(i), releases[i], std::nullopt, 1});
  }
  return inst;
}

Slot Schedule::slot(std::size_t job) const {
  const auto& s = slots_.at(job);
  if (!s) throw InvalidArgument("job " + std::to_string(job) + " is not scheduled");
  return *s;
}

std::size_t Schedule::scheduled_count() const {
  return static_cast<std::size_t>(
      std::count_if(slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); }));
}

std::vector<Slot> Schedule::busy_slots() const {
  std::vector<Slot> out;
  out.reserve(slots_.size());
  for (const auto& s : slots_) {
    if (s) out.push_back(*s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t count_gaps(std::span<const Slot> sorted_busy) {
  std::int64_t g = 0;
  for (std::size_t i = 1; i < sorted_busy.size(); ++i) {
    if (sorted_busy[i] - sorted_busy[i - 1] > 1) ++g;
  }
  return g;
}

std::vector<Window> blocks_of(std::span<const Slot> sorted_busy) {
  std::vector<Window> out;
  for (std::size_t i = 0; i < sorted_busy.size(); ++i) {
    if (out.empty() || sorted_busy[i] > out.back().last + 1) {
      out.push_back({sorted_busy[i], sorted_busy[i]});
    } else {
      out.back().last = sorted_busy[i];
    }
  }
  return out;
}

GapStats gap_stats(std::span<const Slot> busy) {
  if (busy.empty()) throw InvalidArgument("gap_stats: empty schedule");
  std::vector<Slot> s(busy.begin(), busy.end());
  std::sort(s.begin(), s.end());
  GapStats st;
  for (std::size_t i = 1; i < s.size(); ++i) {
    Slot d = s[i] - s[i - 1];
    if (d > 1) {
      ++st.gap_count;
      st.max_idle = std::max(st.max_idle, d - 1);
    }
    st.max_separation = std::max(st.max_separation, d);
  }
  return st;
}

GapStats gap_stats(const Schedule& schedule, const Instance& instance) {
  if (schedule.job_count() != instance.size()) {
    throw InvalidArgument("gap_stats: schedule does not match instance");
  }
  GapStats st = gap_stats(schedule.busy_slots());
  for (std::size_t j = 0; j < instance.size(); ++j) {
    if (!schedule.assigned(j)) continue;
    std::int64_t f = schedule.slot(j) - instance.jobs[j].release;
    st.total_flow += f;
    st.max_flow = std::max(st.max_flow, f);
  }
  return st;
}

namespace {

void require_deadlines(const Instance& instance, const char* who) {
  if (!instance.has_deadlines()) {
    throw InvalidArgument(std::string(who) + ": every job needs a deadline");
  }
}

// One sweep of the release rule: at every slot the pending job with the
// earliest deadline keeps the slot as its release, the others move on.
std::vector<Slot> spread_releases(const std::vector<Slot>& r, const std::vector<Slot>& d) {
  std::size_t n = r.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return r[a] < r[b]; });
  using Item = std::pair<Slot, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pending;
  std::vector<Slot> out(n);
  std::size_t p = 0;
  Slot t = std::numeric_limits<Slot>::min();
  while (p < n || !pending.empty()) {
    if (pending.empty()) t = std::max(t, r[order[p]]);
    while (p < n && r[order[p]] <= t) {
      pending.emplace(d[order[p]], order[p]);
      ++p;
    }
    auto [dl, j] = pending.top();
    pending.pop();
    out[j] = t;
    if (dl >= t) ++t;  // a collapsed job does not hold the slot
  }
  return out;
}

}  // namespace

NormalizedInstance normalize_distinct(const Instance& instance) {
  require_deadlines(instance, "normalize_distinct");
  std::size_t n = instance.size();
  std::vector<Slot> r(n), d(n);
  for (std::size_t j = 0; j < n; ++j) {
    r[j] = instance.jobs[j].release;
    d[j] = *instance.jobs[j].deadline;
  }
  NormalizedInstance out;
  std::vector<std::size_t> alive;
  for (std::size_t j = 0; j < n; ++j) {
    if (d[j] < r[j]) {
      out.removed.push_back(j);
    } else {
      alive.push_back(j);
    }
  }

  // Release pass.
  std::vector<Slot> ar, ad;
  for (auto j : alive) {
    ar.push_back(r[j]);
    ad.push_back(d[j]);
  }
  std::vector<Slot> nr = spread_releases(ar, ad);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < alive.size(); ++i) {
    if (nr[i] > ad[i]) {
      out.removed.push_back(alive[i]);
    } else {
      keep.push_back(i);
    }
  }

  // Deadline pass, mirrored: negate time so deadlines become releases.
  std::vector<Slot> mr, md;
  for (auto i : keep) {
    mr.push_back(-ad[i]);
    md.push_back(-nr[i]);
  }
  std::vector<Slot> nd = spread_releases(mr, md);

  struct Row {
    Slot r, d;
    std::size_t origin;
  };
  std::vector<Row> rows;
  for (std::size_t q = 0; q < keep.size(); ++q) {
    std::size_t i = keep[q];
    Slot dd = -nd[q];
    if (nr[i] > dd) {
      out.removed.push_back(alive[i]);
    } else {
      rows.push_back({nr[i], dd, alive[i]});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.d < b.d; });
  std::sort(out.removed.begin(), out.removed.end());
  for (const Row& row : rows) {
    Job job = instance.jobs[row.origin];
    job.release = row.r;
    job.deadline = row.d;
    out.instance.jobs.push_back(std::move(job));
    out.origin.push_back(row.origin);
  }
  return out;
}

std::optional<Window> hall_violation(const Instance& instance) {
  require_deadlines(instance, "hall_violation");
  std::size_t n = instance.size();
  std::vector<Slot> releases;
  for (const auto& j : instance.jobs) releases.push_back(j.release);
  std::sort(releases.begin(), releases.end());
  releases.erase(std::unique(releases.begin(), releases.end()), releases.end());

  std::optional<Window> best;
  std::int64_t best_excess = 0;
  std::vector<Slot> ds;
  ds.reserve(n);
  for (Slot u : releases) {
    ds.clear();
    for (const auto& j : instance.jobs) {
      if (j.release >= u) ds.push_back(*j.deadline);
    }
    std::sort(ds.begin(), ds.end());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (i + 1 < ds.size() && ds[i + 1] == ds[i]) continue;
      Slot v = ds[i];
      std::int64_t count = static_cast<std::int64_t>(i + 1);
      std::int64_t excess = count - (v - u + 1);
      if (excess <= 0) continue;
      bool better = !best || excess > best_excess ||
                    (excess == best_excess && v - u > best->last - best->first);
      if (better) {
        best = Window{u, v};
        best_excess = excess;
      }
    }
  }
  return best;
}

FeasibilityResult check_feasible(const Instance& instance) {
  require_deadlines(instance, "check_feasible");
  std::size_t n = instance.size();
  FeasibilityResult res;
  res.schedule = Schedule(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return instance.jobs[a].release < instance.jobs[b].release;
  });
  using Item = std::pair<Slot, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pending;
  std::size_t p = 0;
  Slot t = std::numeric_limits<Slot>::min();
  bool ok = true;
  while (p < n || !pending.empty()) {
    if (pending.empty()) t = std::max(t, instance.jobs[order[p]].release);
    while (p < n && instance.jobs[order[p]].release <= t) {
      pending.emplace(*instance.jobs[order[p]].deadline, order[p]);
      ++p;
    }
    auto [dl, job] = pending.top();
    pending.pop();
    if (dl < t) {
      ok = false;
      break;
    }
    res.schedule.assign(job, t);
    ++t;
  }
  res.feasible = ok;
  if (!ok) {
    res.schedule = Schedule(n);
    res.hall_window = hall_violation(instance);
  }
  return res;
}

NormalizedInstance normalize_feasible(const Instance& instance) {
  FeasibilityResult f = check_feasible(instance);
  if (!f.feasible) {
    std::string what = "instance is infeasible";
    if (f.hall_window) {
      what += ": window [" + std::to_string(f.hall_window->first) + "," +
              std::to_string(f.hall_window->last) + "] is overloaded";
    }
    throw InfeasibleError(what, f.hall_window);
  }
  NormalizedInstance norm = normalize_distinct(instance);
  if (!norm.removed.empty()) {
    throw InfeasibleError("instance is infeasible: job " + instance.jobs[norm.removed.front()].id +
                              " has no room",
                          std::nullopt, norm.removed.front());
  }
  return norm;
}

std::vector<Violation> validate(const Schedule& schedule, const Instance& instance,
                                const Constraints& constraints) {
  std::vector<Violation> out;
  if (schedule.job_count() != instance.size()) {
    out.push_back({ViolationKind::bad_job_count, std::nullopt,
                   "schedule covers " + std::to_string(schedule.job_count()) + " jobs, instance has " +
                       std::to_string(instance.size())});
    return out;
  }
  std::map<Slot, std::size_t> owner;
  std::int64_t weight = 0, count = 0;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job& job = instance.jobs[j];
    if (!schedule.assigned(j)) {
      if (constraints.require_all) {
        out.push_back({ViolationKind::unscheduled, j, "job '" + job.id + "' is not scheduled"});
      }
      continue;
    }
    Slot s = schedule.slot(j);
    ++count;
    weight += job.weight;
    if (s < job.release) {
      out.push_back({ViolationKind::before_release, j,
                     "job '" + job.id + "' at slot " + std::to_string(s) + " before release " +
                         std::to_string(job.release)});
    }
    if (job.deadline && s > *job.deadline) {
      out.push_back({ViolationKind::after_deadline, j,
                     "job '" + job.id + "' at slot " + std::to_string(s) + " after deadline " +
                         std::to_string(*job.deadline)});
    }
    auto [it, fresh] = owner.emplace(s, j);
    if (!fresh) {
      out.push_back({ViolationKind::slot_collision, j,
                     "jobs '" + instance.jobs[it->second].id + "' and '" + job.id + "' share slot " +
                         std::to_string(s)});
    }
  }
  if (count == 0) {
    if (constraints.min_throughput && *constraints.min_throughput > 0) {
      out.push_back({ViolationKind::throughput, std::nullopt, "nothing scheduled"});
    }
    return out;
  }
  GapStats st = gap_stats(schedule, instance);
  if (constraints.max_gaps && st.gap_count > *constraints.max_gaps) {
    out.push_back({ViolationKind::gap_budget, std::nullopt,
                   std::to_string(st.gap_count) + " gaps exceed budget " +
                       std::to_string(*constraints.max_gaps)});
  }
  if (constraints.max_total_flow && st.total_flow > *constraints.max_total_flow) {
    out.push_back({ViolationKind::total_flow, std::nullopt,
                   "total flow " + std::to_string(st.total_flow) + " exceeds " +
                       std::to_string(*constraints.max_total_flow)});
  }
  if (constraints.max_flow && st.max_flow > *constraints.max_flow) {
    out.push_back({ViolationKind::max_flow, std::nullopt,
                   "max flow " + std::to_string(st.max_flow) + " exceeds " +
                       std::to_string(*constraints.max_flow)});
  }
  if (constraints.min_throughput) {
    std::int64_t got = constraints.weighted_throughput ? weight : count;
    if (got < *constraints.min_throughput) {
      out.push_back({ViolationKind::throughput, std::nullopt,
                     "throughput " + std::to_string(got) + " below " +
                         std::to_string(*constraints.min_throughput)});
    }
  }
  return out;
}

Schedule shift_block_left(const Schedule& schedule, const Instance& instance, Window block) {
  if (schedule.job_count() != instance.size()) {
    throw InvalidArgument("shift_block_left: schedule does not match instance");
  }
  std::map<Slot, std::size_t> at;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    if (schedule.assigned(j)) at[schedule.slot(j)] = j;
  }
  const Slot u = block.first, v = block.last;
  if (u > v) throw InvalidArgument("shift_block_left: empty block");
  for (Slot t = u; t <= v; ++t) {
    if (!at.count(t)) throw InvalidArgument("shift_block_left: slot " + std::to_string(t) + " is idle");
  }
  if (at.count(u - 1) || at.count(v + 1)) {
    throw InvalidArgument("shift_block_left: [" + std::to_string(u) + "," + std::to_string(v) +
                          "] is not a maximal block");
  }
  std::set<Slot> seen;
  for (Slot t = u; t <= v; ++t) {
    if (!seen.insert(instance.jobs[at[t]].release).second) {
      throw InvalidArgument("shift_block_left: release times in the block are not distinct");
    }
  }
  auto res = detail::shift_chain(
      u, v, [&](Slot t) { return at.at(t); },
      [&](std::size_t j) { return instance.jobs[j].release; });
  if (res.blocking_job) {
    const Job& job = instance.jobs[*res.blocking_job];
    throw InvalidArgument("shift_block_left: job '" + job.id + "' at slot " + std::to_string(v) +
                          " cannot move before its release " + std::to_string(job.release));
  }
  Schedule out = schedule;
  for (auto [j, s] : res.moves) out.assign(j, s);
  return out;
}

}  // namespace gapsched
