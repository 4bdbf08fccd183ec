#include "gapsched/maxgaps.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace gapsched {

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 4;

struct Key {
  std::int32_t k;
  Slot u, v;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& key) const {
    std::uint64_t h = static_cast<std::uint64_t>(key.k) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(key.u) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(key.v) + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

struct Cell {
  std::int64_t value;
  Slot t;  // argmax slot of job k, unused for copies and base cases
};

// D(k,u,v) over the sentinel-augmented deadline-sorted jobs 0..N-1.
class MaxGapsDp {
 public:
  MaxGapsDp(std::vector<Slot> r, std::vector<Slot> d) : r_(std::move(r)), d_(std::move(d)) {
    const std::size_t n = r_.size();
    span_ = 3 * static_cast<Slot>(n);
    earlier_.resize(n);
    for (std::size_t k = 1; k < n; ++k) {
      earlier_[k] = earlier_[k - 1];
      earlier_[k].insert(std::lower_bound(earlier_[k].begin(), earlier_[k].end(), r_[k - 1]),
                         r_[k - 1]);
    }
  }

  std::int64_t value(std::int32_t k, Slot u, Slot v) { return eval(k, u, v); }

  void schedule(std::int32_t k, Slot u, Slot v, std::vector<Slot>& slots) {
    while (true) {
      if (u == v + 1 || k < 0) return;
      if (r_[k] < u || r_[k] > v) {
        --k;
        continue;
      }
      eval(k, u, v);
      const Slot t = memo_.at({k, u, v}).t;
      slots[k] = t;
      schedule(k - 1, u, t - 1, slots);
      auto nxt = next_release(k, t + 1, v);
      if (!nxt) return;
      u = *nxt == t + 1 ? t + 1 : *nxt - 1;
      --k;
    }
  }

  std::size_t states() const { return memo_.size(); }

 private:
  // Smallest release of a job below k in [lo, hi].
  std::optional<Slot> next_release(std::int32_t k, Slot lo, Slot hi) const {
    const auto& e = earlier_[k];
    auto it = std::lower_bound(e.begin(), e.end(), lo);
    if (it == e.end() || *it > hi) return std::nullopt;
    return *it;
  }

  bool is_earlier_release(std::int32_t k, Slot t) const {
    return std::binary_search(earlier_[k].begin(), earlier_[k].end(), t);
  }

  std::int64_t eval(std::int32_t k, Slot u, Slot v) {
    if (u == v + 1) return 0;
    if (k < 0) return 1;
    if (r_[k] < u || r_[k] > v) return eval(k - 1, u, v);
    Key key{k, u, v};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;

    Cell best{kNegInf, 0};
    const Slot top = std::min({v, d_[k], r_[k] + span_});
    for (Slot t = r_[k]; t <= top; ++t) {
      if (is_earlier_release(k, t)) continue;
      const std::int64_t left = eval(k - 1, u, t - 1);
      if (left == kNegInf) continue;
      std::int64_t right;
      if (auto nxt = next_release(k, t + 1, v); !nxt) {
        right = t + 1 <= v ? 1 : 0;
      } else if (*nxt == t + 1) {
        right = eval(k - 1, t + 1, v);
      } else {
        right = eval(k - 1, *nxt - 1, v);
      }
      if (right == kNegInf) continue;
      if (left + right > best.value) best = {left + right, t};
    }
    memo_.emplace(key, best);
    return best.value;
  }

  std::vector<Slot> r_, d_;
  Slot span_ = 0;
  std::vector<std::vector<Slot>> earlier_;  // sorted releases of jobs 0..k-1
  std::unordered_map<Key, Cell, KeyHash> memo_;
};

}  // namespace

MaxGapsResult max_gaps(const Instance& instance) {
  MaxGapsResult out;
  out.schedule = Schedule(instance.size());
  if (instance.empty()) return out;
  NormalizedInstance norm = normalize_feasible(instance);
  const Instance& inst = norm.instance;
  Slot lo = inst.jobs.front().release, hi = *inst.jobs.front().deadline;
  for (const Job& j : inst.jobs) {
    lo = std::min(lo, j.release);
    hi = std::max(hi, *j.deadline);
  }
  std::vector<Slot> r{lo - 2}, d{lo - 2};
  for (const Job& j : inst.jobs) {
    r.push_back(j.release);
    d.push_back(*j.deadline);
  }
  r.push_back(hi + 2);
  d.push_back(hi + 2);
  const auto top = static_cast<std::int32_t>(r.size() - 1);

  MaxGapsDp dp(r, d);
  const std::int64_t value = dp.value(top, r.front(), d.back());
  if (value < 2) throw Error("max_gaps: no schedule found for a feasible instance");
  // The sentinels are tight and separated from the jobs by gaps.
  out.gaps = value - 2;
  std::vector<Slot> slots(r.size());
  dp.schedule(top, r.front(), d.back(), slots);
  for (std::size_t i = 0; i < inst.size(); ++i) out.schedule.assign(norm.origin[i], slots[i + 1]);
  out.states = dp.states();
  if (!validate(out.schedule, instance).empty() ||
      count_gaps(out.schedule.busy_slots()) != out.gaps) {
    throw Error("max_gaps: reconstructed schedule failed validation");
  }
  return out;
}

namespace {

// Re-seats the jobs on the same busy slots in earliest-deadline order.
void edf_reseat(Schedule& s, const Instance& inst) {
  std::vector<Slot> busy = s.busy_slots();
  std::vector<std::size_t> jobs;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    if (s.assigned(j)) jobs.push_back(j);
  }
  std::stable_sort(jobs.begin(), jobs.end(), [&](std::size_t a, std::size_t b) {
    return inst.jobs[a].release < inst.jobs[b].release;
  });
  using Item = std::tuple<Slot, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pending;
  Schedule out(inst.size());
  std::size_t p = 0;
  for (Slot t : busy) {
    while (p < jobs.size() && inst.jobs[jobs[p]].release <= t) {
      pending.emplace(inst.jobs[jobs[p]].deadline.value_or(std::numeric_limits<Slot>::max()), jobs[p]);
      ++p;
    }
    if (pending.empty()) return;  // busy set not EDF-feasible: keep as is
    auto [dl, j] = pending.top();
    pending.pop();
    if (dl < t) return;
    out.assign(j, t);
  }
  s = std::move(out);
}

// One rewrite of either rule; false at the fixpoint.
bool rewrite_once(Schedule& s, const Instance& inst) {
  const std::vector<Slot> busy = s.busy_slots();
  if (busy.empty()) return false;
  std::map<Slot, std::size_t> at;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    if (s.assigned(j)) at[s.slot(j)] = j;
  }
  const std::int64_t before = count_gaps(busy);
  auto try_move = [&](std::size_t j, Slot to) {
    Schedule next = s;
    next.assign(j, to);
    if (count_gaps(next.busy_slots()) < before) return false;
    s = std::move(next);
    return true;
  };

  // Rule (i): a job with an idle run of length >= 3 inside [r_j, S_j).
  for (const auto& [slot, j] : at) {
    const Slot rj = inst.jobs[j].release;
    for (std::size_t i = 0; i < busy.size(); ++i) {
      // idle run between busy[i-1] and busy[i], or before busy[0] from r_j
      const Slot x = i == 0 ? rj : std::max(rj, busy[i - 1] + 1);
      const Slot x_end = busy[i] - 1;
      if (busy[i] > slot) break;
      if (x_end - x >= 2 && x >= rj && try_move(j, x + 1)) return true;
    }
  }

  // Rule (ii): a later block after a gap of length >= 2 with a job off its release.
  auto blocks = blocks_of(busy);
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    const Slot y = blocks[b].first;
    if (y - blocks[b - 1].last - 1 < 2) continue;
    for (Slot t = y; t <= blocks[b].last; ++t) {
      const std::size_t l = at.at(t);
      if (inst.jobs[l].release == t) continue;
      if (inst.jobs[l].release <= y - 1 && try_move(l, y - 1)) return true;
      break;
    }
  }
  return false;
}

}  // namespace

Schedule lemma2_normalize(const Schedule& schedule, const Instance& instance) {
  if (!validate(schedule, instance).empty()) {
    throw InvalidArgument("lemma2_normalize: schedule is not feasible");
  }
  Schedule s = schedule;
  edf_reseat(s, instance);
  while (rewrite_once(s, instance)) edf_reseat(s, instance);
  return s;
}

}  // namespace gapsched
