#include "gapsched/minmaxgap.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "gapsched/hitting.hpp"

namespace gapsched {

std::optional<std::vector<Slot>> separation_viable(const Instance& normalized, std::int64_t sigma) {
  const std::size_t n = normalized.size();
  std::vector<Slot> slots(n);
  if (n == 0) return slots;
  auto r = [&](std::size_t j) { return normalized.jobs[j].release; };
  auto d = [&](std::size_t j) { return *normalized.jobs[j].deadline; };
  std::size_t first = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (d(j) < d(first)) first = j;
  }
  std::vector<std::size_t> by_release(n);
  std::iota(by_release.begin(), by_release.end(), std::size_t{0});
  std::stable_sort(by_release.begin(), by_release.end(),
                   [&](std::size_t a, std::size_t b) { return r(a) < r(b); });

  using Item = std::pair<Slot, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pending;
  Slot last = d(first);
  slots[first] = last;
  std::size_t p = 0;
  for (std::size_t step = 1; step < n; ++step) {
    const Slot z = last + sigma;
    while (p < n && r(by_release[p]) <= z) {
      if (by_release[p] != first) pending.emplace(d(by_release[p]), by_release[p]);
      ++p;
    }
    if (pending.empty()) return std::nullopt;
    auto [dl, j] = pending.top();
    pending.pop();
    if (dl < last + 1) return std::nullopt;
    last = std::min(dl, z);
    slots[j] = last;
  }
  return slots;
}

namespace {

std::int64_t separation_of(std::vector<Slot> slots) {
  std::sort(slots.begin(), slots.end());
  std::int64_t s = 0;
  for (std::size_t i = 1; i < slots.size(); ++i) s = std::max(s, slots[i] - slots[i - 1]);
  return s;
}

// Round each representative up and push colliding jobs right in deadline
// order. nullopt if a job is pushed past its deadline.
std::optional<std::vector<Slot>> round_up(const Instance& inst, const HittingSet& h) {
  const std::size_t n = inst.size();
  std::vector<Slot> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = h.representative[j]->ceil();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return c[a] != c[b] ? c[a] < c[b] : *inst.jobs[a].deadline < *inst.jobs[b].deadline;
  });
  std::vector<Slot> out(n);
  std::optional<Slot> prev;
  for (std::size_t j : order) {
    Slot s = prev ? std::max(c[j], *prev + 1) : c[j];
    if (s > *inst.jobs[j].deadline) return std::nullopt;
    out[j] = s;
    prev = s;
  }
  return out;
}

}  // namespace

MinMaxGapResult min_max_gap(const Instance& instance) {
  MinMaxGapResult out;
  out.schedule = Schedule(instance.size());
  if (instance.empty()) return out;
  NormalizedInstance norm = normalize_feasible(instance);
  const Instance& inst = norm.instance;
  const std::size_t n = inst.size();

  std::vector<Interval> iv = intervals_of(inst);
  MaxGapResult cont = min_max_gap_cont(iv);
  out.lambda_star = cont.lambda;
  if (auto rounded = round_up(inst, cont.hitting)) out.rounded = separation_of(*rounded);

  std::vector<Slot> best;
  if (n == 1) {
    best = {*inst.jobs[0].deadline};
  } else {
    Slot lo_r = inst.jobs[0].release, hi_d = *inst.jobs[0].deadline;
    for (const Job& j : inst.jobs) {
      lo_r = std::min(lo_r, j.release);
      hi_d = std::max(hi_d, *j.deadline);
    }
    std::int64_t lo = 1, hi = std::max<std::int64_t>(1, hi_d - lo_r);
    auto top = separation_viable(inst, hi);
    if (!top) throw Error("min_max_gap: widest separation rejected on a feasible instance");
    best = std::move(*top);
    while (lo < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (auto s = separation_viable(inst, mid)) {
        hi = mid;
        best = std::move(*s);
      } else {
        lo = mid + 1;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.schedule.assign(norm.origin[i], best[i]);
  GapStats st = gap_stats(out.schedule.busy_slots());
  out.max_separation = st.max_separation;
  out.max_idle = st.max_idle;
  if (!validate(out.schedule, instance).empty()) {
    throw Error("min_max_gap: schedule failed validation");
  }
  return out;
}

}  // namespace gapsched
