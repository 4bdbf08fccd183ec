#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "gapsched/gapsched.hpp"

namespace gapsched::testing {

// Small seeded generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return range(0, 1) == 1; }

  // n jobs with windows inside [0, horizon).
  Instance windows(std::size_t n, Slot horizon) {
    std::vector<std::pair<Slot, Slot>> w;
    for (std::size_t i = 0; i < n; ++i) {
      const Slot r = range(0, horizon - 1);
      w.emplace_back(r, range(r, horizon - 1));
    }
    return make_instance(w);
  }

  Instance weighted_windows(std::size_t n, Slot horizon, Weight max_weight) {
    Instance inst = windows(n, horizon);
    for (Job& j : inst.jobs) j.weight = range(1, max_weight);
    return inst;
  }

  // Feasible by construction: windows around distinct planted slots.
  Instance planted(std::size_t n, Slot horizon) {
    std::vector<Slot> slots;
    while (slots.size() < n) {
      const Slot s = range(0, horizon - 1);
      if (std::find(slots.begin(), slots.end(), s) == slots.end()) slots.push_back(s);
    }
    std::vector<std::pair<Slot, Slot>> w;
    for (Slot s : slots) w.emplace_back(range(std::max<Slot>(0, s - 4), s), range(s, std::min(horizon - 1, s + 4)));
    return make_instance(w);
  }

  std::vector<Slot> releases(std::size_t n, Slot horizon, bool distinct = false) {
    std::vector<Slot> r;
    while (r.size() < n) {
      const Slot x = range(0, horizon - 1);
      if (distinct && std::find(r.begin(), r.end(), x) != r.end()) continue;
      r.push_back(x);
    }
    std::sort(r.begin(), r.end());
    return r;
  }

  std::vector<Interval> intervals(std::size_t n, Slot max_coord) {
    std::vector<std::pair<Slot, Slot>> s;
    for (std::size_t i = 0; i < n; ++i) {
      const Slot a = range(0, max_coord);
      s.emplace_back(a, range(a, max_coord));
    }
    return make_intervals(s);
  }

  std::vector<std::int64_t> sorted_vector(std::size_t n, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> v(n);
    for (auto& x : v) x = range(lo, hi);
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

// Pushes jobs of a full schedule toward their deadlines at random.
inline Schedule jitter_right(Schedule s, const Instance& inst, Gen& gen) {
  for (std::size_t j = 0; j < inst.size(); ++j) {
    auto busy = s.busy_slots();
    for (Slot x = *inst.jobs[j].deadline; x > s.slot(j); --x) {
      if (!std::binary_search(busy.begin(), busy.end(), x) && gen.coin()) {
        s.assign(j, x);
        break;
      }
    }
  }
  return s;
}

inline Instance with_weights(Instance inst, const std::vector<Weight>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) inst.jobs[i].weight = w[i];
  return inst;
}

inline std::vector<Slot> releases_of(const Instance& inst) {
  std::vector<Slot> r;
  for (const Job& j : inst.jobs) r.push_back(j.release);
  std::sort(r.begin(), r.end());
  return r;
}

// Limits for instances without deadlines, whose universe is [min r, max r + n].
inline OracleLimits flow_limits() { return {8, 32}; }

}  // namespace gapsched::testing
