#include "gapsched/mingaps.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>

namespace gapsched {

namespace {

using Partial = std::vector<std::pair<std::size_t, Slot>>;

struct Candidate {
  std::int64_t g;
  Slot s;
  std::optional<std::size_t> c;  // top case split job, none for bottom case
};

template <class Tables, class Visit>
void for_each_candidate(const Tables& t, std::size_t k, std::size_t a, std::size_t b, Visit visit) {
  const Slot rk = t.release(k), rb = t.release(b);
  for (std::size_t c = 1; c < k; ++c) {
    const Slot rc = t.release(c);
    if (rk < rc && rc < rb && t.S(k - 1, a, c) >= rc - 2) {
      visit(Candidate{t.G(k - 1, a, c) + t.G(k - 1, c, b), t.S(k - 1, c, b), c});
    }
  }
  const Slot s0 = t.S(k - 1, a, b);
  if (s0 + 1 < rk) {
    visit(Candidate{t.G(k - 1, a, b) + 1, std::min(t.deadline(k), rb - 1), std::nullopt});
  } else {
    visit(Candidate{t.G(k - 1, a, b), std::min(s0 + 1, rb - 1), std::nullopt});
  }
}

Slot end_of(const Partial& q, Slot ra) {
  Slot e = ra;
  for (const auto& [j, t] : q) e = std::max(e, t);
  return e;
}

std::int64_t gaps_from(const Partial& q, Slot ra) {
  std::vector<Slot> s{ra};
  for (const auto& [j, t] : q) s.push_back(t);
  std::sort(s.begin(), s.end());
  return count_gaps(s);
}

// Left shift of the last block; nullopt when its last job sits at its
// release or the shift would reach the slot at release(a).
template <class Tables>
std::optional<Partial> compress(const Tables& t, Partial q, Slot ra) {
  if (q.empty()) return std::nullopt;
  std::unordered_map<Slot, std::size_t> pos;  // slot -> index into q
  for (std::size_t i = 0; i < q.size(); ++i) pos[q[i].second] = i;
  Slot v = end_of(q, ra), u = v;
  while (pos.count(u - 1)) --u;
  auto res = detail::shift_chain(
      u, v, [&](Slot s) { return pos.at(s); }, [&](std::size_t i) { return t.release(q[i].first); });
  if (res.blocking_job) return std::nullopt;
  for (auto [i, s] : res.moves) q[i].second = s;
  for (const auto& [j, s] : q) {
    if (s <= ra) return std::nullopt;
  }
  return q;
}

template <class Tables>
class Builder {
 public:
  explicit Builder(const Tables& t) : t_(t) {}

  Partial build(std::size_t k, std::size_t a, std::size_t b) {
    const Slot ra = t_.release(a), rb = t_.release(b);
    while (k > 0 && !(ra < t_.release(k) && t_.release(k) < rb)) --k;
    if (k == 0) return {};
    auto key = std::make_tuple(k, a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const std::int64_t g = t_.G(k, a, b);
    const Slot s = t_.S(k, a, b);
    std::vector<Candidate> tops;
    bool bottom = false;
    for_each_candidate(t_, k, a, b, [&](const Candidate& c) {
      if (c.g != g || c.s != s) return;
      if (c.c) {
        tops.push_back(c);
      } else {
        bottom = true;
      }
    });
    for (const Candidate& cand : tops) {
      if (auto q = try_top(k, a, b, *cand.c); q && accept(*q, ra, g, s)) return memo_[key] = *q;
    }
    if (bottom) {
      if (auto q = try_bottom(k, a, b); q && accept(*q, ra, g, s)) return memo_[key] = *q;
    }
    throw Error("min_gaps: no reconstruction for cell (" + std::to_string(k) + "," +
                std::to_string(a) + "," + std::to_string(b) + ")");
  }

 private:
  static bool accept(const Partial& q, Slot ra, std::int64_t g, Slot s) {
    return gaps_from(q, ra) == g && end_of(q, ra) == s;
  }

  std::optional<Partial> try_top(std::size_t k, std::size_t a, std::size_t b, std::size_t c) {
    const Slot ra = t_.release(a), rc = t_.release(c);
    Partial left = build(k - 1, a, c);
    if (end_of(left, ra) == rc - 1) {
      auto shifted = compress(t_, left, ra);
      if (!shifted) return std::nullopt;
      left = std::move(*shifted);
    }
    if (end_of(left, ra) != rc - 2) return std::nullopt;
    Partial right = build(k - 1, c, b);
    left.insert(left.end(), right.begin(), right.end());
    left.emplace_back(k, rc - 1);
    left.emplace_back(c, rc);
    return left;
  }

  std::optional<Partial> try_bottom(std::size_t k, std::size_t a, std::size_t b) {
    const Slot ra = t_.release(a), rb = t_.release(b), rk = t_.release(k);
    Partial q = build(k - 1, a, b);
    const Slot e = end_of(q, ra);
    if (e + 1 < rk) {
      q.emplace_back(k, std::min(t_.deadline(k), rb - 1));
      return q;
    }
    if (e + 1 <= rb - 1) {
      q.emplace_back(k, e + 1);
      return q;
    }
    if (auto shifted = compress(t_, q, ra)) {
      shifted->emplace_back(k, rb - 1);
      return shifted;
    }
    // The job at rb-1 is released there: split the cell at it.
    for (const auto& [x, slot] : q) {
      if (slot != rb - 1) continue;
      if (t_.release(x) != rb - 1) return std::nullopt;
      Partial p = build(k, a, x);
      p.emplace_back(x, rb - 1);
      return p;
    }
    return std::nullopt;
  }

  const Tables& t_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Partial> memo_;
};

}  // namespace

std::vector<std::pair<std::size_t, Slot>> MinGapsTables::cell_schedule(std::size_t k, std::size_t a,
                                                                        std::size_t b) const {
  if (k >= size() || a >= size() || b >= size() || !defined(a, b)) {
    throw InvalidArgument("cell_schedule: undefined cell");
  }
  Builder<MinGapsTables> builder(*this);
  return builder.build(k, a, b);
}

MinGapsTables min_gaps_tables(const Instance& instance) {
  NormalizedInstance norm = normalize_feasible(instance);
  const Instance& inst = norm.instance;
  MinGapsTables t;
  Slot lo = 0, hi = 0;
  if (!inst.empty()) {
    lo = inst.jobs.front().release;
    for (const Job& j : inst.jobs) {
      lo = std::min(lo, j.release);
      hi = std::max(hi, *j.deadline);
    }
    hi = std::max(hi, lo);
  }
  t.r_.push_back(lo - 2);
  t.d_.push_back(lo - 2);
  t.origin_.push_back(MinGapsTables::npos);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    t.r_.push_back(inst.jobs[i].release);
    t.d_.push_back(*inst.jobs[i].deadline);
    t.origin_.push_back(norm.origin[i]);
  }
  t.r_.push_back(hi + 2);
  t.d_.push_back(hi + 2);
  t.origin_.push_back(MinGapsTables::npos);

  const std::size_t n = t.size();
  t.g_.assign(n * n * n, 0);
  t.s_.assign(n * n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t.s_[t.at(0, a, b)] = t.r_[a];
  }
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t cell = t.at(k, a, b);
        if (!(t.r_[a] < t.r_[k] && t.r_[k] < t.r_[b])) {
          t.g_[cell] = t.g_[t.at(k - 1, a, b)];
          t.s_[cell] = t.s_[t.at(k - 1, a, b)];
          continue;
        }
        std::int64_t best_g = std::numeric_limits<std::int64_t>::max();
        Slot best_s = std::numeric_limits<Slot>::min();
        for_each_candidate(t, k, a, b, [&](const Candidate& c) {
          if (c.g < best_g || (c.g == best_g && c.s > best_s)) {
            best_g = c.g;
            best_s = c.s;
          }
        });
        t.g_[cell] = static_cast<std::int32_t>(best_g);
        t.s_[cell] = best_s;
      }
    }
  }
  return t;
}

MinGapsResult min_gaps(const Instance& instance) {
  MinGapsResult out;
  out.schedule = Schedule(instance.size());
  if (instance.empty()) return out;
  MinGapsTables t = min_gaps_tables(instance);
  const std::size_t n = t.size();
  // The left sentinel always sits one idle slot before the first job.
  out.gaps = t.G(n - 2, 0, n - 1) - 1;
  for (const auto& [j, slot] : t.cell_schedule(n - 2, 0, n - 1)) {
    out.schedule.assign(t.origin(j), slot);
  }
  if (!validate(out.schedule, instance).empty() ||
      count_gaps(out.schedule.busy_slots()) != out.gaps) {
    throw Error("min_gaps: reconstructed schedule failed validation");
  }
  return out;
}

}  // namespace gapsched
