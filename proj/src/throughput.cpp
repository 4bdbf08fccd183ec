#include "gapsched/throughput.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace gapsched {

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 4;

struct Key {
  std::int32_t k;
  std::int32_t g;
  Slot u, v;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& key) const {
    std::uint64_t h = (static_cast<std::uint64_t>(key.k) << 32 | static_cast<std::uint32_t>(key.g)) *
                      0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(key.u) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(key.v) + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

enum class Choice : std::uint8_t { skip, middle, last, at_end };

struct Cell {
  std::int64_t value = kNegInf;
  Choice choice = Choice::skip;
  Slot t = 0;
  std::int32_t h = 0;
};

// T(k,u,v,g): best weight of jobs 0..k released in [u,v] scheduled inside
// [u,v] with at most g gaps, counting the idle runs at either end.
class ThroughputDp {
 public:
  ThroughputDp(const Instance& inst, bool weighted) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const Job& j = inst.jobs[i];
      if (!j.deadline) throw InvalidArgument("max_throughput: job " + j.id + " has no deadline");
      if (*j.deadline >= j.release) idx_.push_back(i);
    }
    std::stable_sort(idx_.begin(), idx_.end(), [&](std::size_t a, std::size_t b) {
      return *inst.jobs[a].deadline < *inst.jobs[b].deadline;
    });
    const std::size_t m = idx_.size();
    if (m == 0) return;
    Slot rmax = inst.jobs[idx_[0]].release, rmin = rmax;
    for (auto i : idx_) {
      rmax = std::max(rmax, inst.jobs[i].release);
      rmin = std::min(rmin, inst.jobs[i].release);
    }
    lo_ = rmin - 1;
    top_ = rmax + static_cast<Slot>(m);
    for (auto i : idx_) {
      const Job& j = inst.jobs[i];
      r_.push_back(j.release);
      d_.push_back(std::min(*j.deadline, top_ - 1));
      w_.push_back(weighted ? j.weight : 1);
      if (weighted && j.weight < 0) throw InvalidArgument("weights must be non-negative");
    }
    for (Slot x : r_) {
      split_.push_back(x - 1);
      for (Slot s = 0; s <= static_cast<Slot>(m); ++s) tail_.push_back(x + s);
    }
    for (auto* v : {&split_, &tail_}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
  }

  std::size_t kept() const { return idx_.size(); }
  std::size_t states() const { return memo_.size(); }

  // Top level: padded window, both ends idle, budget gaps + 2.
  std::int64_t best(std::int64_t gaps) {
    if (idx_.empty()) return 0;
    return eval(static_cast<std::int32_t>(idx_.size()) - 1, lo_, top_, budget(gaps));
  }

  Schedule witness(std::int64_t gaps, std::size_t job_count) {
    Schedule s(job_count);
    if (idx_.empty()) return s;
    std::vector<std::optional<Slot>> slots(idx_.size());
    rebuild(static_cast<std::int32_t>(idx_.size()) - 1, lo_, top_, budget(gaps), slots);
    for (std::size_t q = 0; q < idx_.size(); ++q) {
      if (slots[q]) s.assign(idx_[q], *slots[q]);
    }
    return s;
  }

 private:
  static std::int32_t budget(std::int64_t gaps) {
    return static_cast<std::int32_t>(std::min<std::int64_t>(gaps, 1 << 20) + 2);
  }

  std::int64_t eval(std::int32_t k, Slot u, Slot v, std::int32_t g) {
    if (g < 0) return kNegInf;
    if (u == v + 1) return 0;
    if (k < 0) return g >= 1 ? 0 : kNegInf;
    if (r_[k] < u || r_[k] > v) return eval(k - 1, u, v, g);
    // More than |K|+1 gaps can never be used.
    g = std::min<std::int32_t>(g, k + 2);
    Key key{k, g, u, v};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;

    Cell best;
    auto offer = [&](std::int64_t value, Choice c, Slot t, std::int32_t h) {
      if (value > best.value) best = {value, c, t, h};
    };
    offer(eval(k - 1, u, v, g), Choice::skip, 0, 0);
    const Slot from = std::max(u, r_[k]);
    const Slot mid_hi = std::min(d_[k], v);
    auto middle = [&](Slot t) {
      for (std::int32_t h = 0; h <= g; ++h) {
        const std::int64_t a = eval(k - 1, u, t - 1, h);
        if (a == kNegInf) continue;
        const std::int64_t b = eval(k - 1, t + 1, v, g - h);
        if (b == kNegInf) continue;
        offer(a + b + w_[k], Choice::middle, t, h);
      }
    };
    bool dk_done = false;
    for (auto it = std::lower_bound(split_.begin(), split_.end(), from);
         it != split_.end() && *it <= mid_hi; ++it) {
      dk_done = dk_done || *it == d_[k];
      middle(*it);
    }
    if (!dk_done && from <= d_[k] && d_[k] <= mid_hi) middle(d_[k]);
    const Slot last_hi = std::min(d_[k], v - 1);
    for (auto it = std::lower_bound(tail_.begin(), tail_.end(), from);
         it != tail_.end() && *it <= last_hi; ++it) {
      const std::int64_t a = eval(k - 1, u, *it - 1, g - 1);
      if (a != kNegInf) offer(a + w_[k], Choice::last, *it, 0);
    }
    if (d_[k] >= v) {
      const std::int64_t a = eval(k - 1, u, v - 1, g);
      if (a != kNegInf) offer(a + w_[k], Choice::at_end, v, 0);
    }
    memo_.emplace(key, best);
    return best.value;
  }

  void rebuild(std::int32_t k, Slot u, Slot v, std::int32_t g,
               std::vector<std::optional<Slot>>& slots) {
    while (true) {
      if (g < 0 || u == v + 1 || k < 0) return;
      if (r_[k] < u || r_[k] > v) {
        --k;
        continue;
      }
      g = std::min<std::int32_t>(g, k + 2);
      eval(k, u, v, g);
      const Cell c = memo_.at({k, g, u, v});
      switch (c.choice) {
        case Choice::skip:
          break;
        case Choice::middle:
          slots[k] = c.t;
          rebuild(k - 1, u, c.t - 1, c.h, slots);
          u = c.t + 1;
          g -= c.h;
          break;
        case Choice::last:
          slots[k] = c.t;
          v = c.t - 1;
          g -= 1;
          break;
        case Choice::at_end:
          slots[k] = v;
          v -= 1;
          break;
      }
      --k;
    }
  }

  std::vector<std::size_t> idx_;
  std::vector<Slot> r_, d_;
  std::vector<std::int64_t> w_;
  std::vector<Slot> split_, tail_;
  Slot lo_ = 0, top_ = 0;
  std::unordered_map<Key, Cell, KeyHash> memo_;
};

}  // namespace

ThroughputResult max_throughput(const Instance& instance, std::int64_t gaps, bool weighted) {
  if (gaps < 0) throw InvalidArgument("gap budget must be non-negative");
  ThroughputDp dp(instance, weighted);
  ThroughputResult out;
  out.value = dp.best(gaps);
  out.schedule = dp.witness(gaps, instance.size());
  out.states = dp.states();
  return out;
}

MinGapsThroughputResult min_gaps_for_throughput(const Instance& instance, std::int64_t m,
                                                bool weighted) {
  MinGapsThroughputResult out;
  out.schedule = Schedule(instance.size());
  if (m <= 0) return out;
  ThroughputDp dp(instance, weighted);
  const auto unlimited = static_cast<std::int64_t>(std::max<std::size_t>(dp.kept(), 1)) - 1;
  const std::int64_t reachable = dp.best(unlimited);
  if (reachable < m) {
    throw InfeasibleError("throughput " + std::to_string(m) + " is out of reach, best is " +
                          std::to_string(reachable));
  }
  for (std::int64_t g = 0; g <= unlimited; ++g) {
    const std::int64_t v = dp.best(g);
    if (v >= m) {
      out.gaps = g;
      out.value = v;
      out.schedule = dp.witness(g, instance.size());
      return out;
    }
  }
  throw Error("min_gaps_for_throughput: scan ended without reaching the target");
}

}  // namespace gapsched
