#include "gapsched/hitting.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "gapsched/xy_select.hpp"
#include "layered_dp.hpp"

namespace gapsched {

std::vector<Interval> make_intervals(const std::vector<std::pair<Slot, Slot>>& spans) {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].second < spans[i].first) {
      throw InvalidArgument("interval " + std::to_string(i) + " ends before it starts");
    }
    out.push_back({"i" + std::to_string(i), spans[i].first, spans[i].second});
  }
  return out;
}

std::vector<Interval> intervals_of(const Instance& instance) {
  std::vector<Interval> out;
  for (const Job& j : instance.jobs) {
    if (!j.deadline) throw InvalidArgument("intervals_of: job " + j.id + " has no deadline");
    out.push_back({j.id, j.release, *j.deadline});
  }
  return out;
}

namespace {

std::vector<std::size_t> by_end(std::span<const Interval> iv) {
  std::vector<std::size_t> order(iv.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return iv[a].end < iv[b].end; });
  return order;
}

void collect_points(HittingSet& h) {
  h.points.clear();
  for (const auto& p : h.representative) {
    if (p) h.points.push_back(*p);
  }
  std::sort(h.points.begin(), h.points.end());
  h.points.erase(std::unique(h.points.begin(), h.points.end()), h.points.end());
}

// Representatives for integer points: each interval takes the first point
// at or after its start, if that point lies inside it.
HittingSet hit_with(std::span<const Interval> iv, std::vector<Slot> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  HittingSet h;
  h.representative.resize(iv.size());
  for (std::size_t i = 0; i < iv.size(); ++i) {
    auto it = std::lower_bound(pts.begin(), pts.end(), iv[i].start);
    if (it != pts.end() && *it <= iv[i].end) h.representative[i] = Rational(*it);
  }
  collect_points(h);
  return h;
}

std::int64_t weight_of(std::span<const std::int64_t> w, std::size_t i) {
  return w.empty() ? 1 : w[i];
}

void check_weights(std::span<const Interval> iv, std::span<const std::int64_t> w) {
  if (!w.empty() && w.size() != iv.size()) throw InvalidArgument("weights do not match intervals");
  for (auto x : w) {
    if (x < 0) throw InvalidArgument("weights must be non-negative");
  }
}

}  // namespace

HittingSet greedy_min_hitting(std::span<const Interval> intervals) {
  HittingSet h;
  h.representative.resize(intervals.size());
  std::optional<Slot> last;
  for (std::size_t i : by_end(intervals)) {
    if (!last || intervals[i].start > *last) last = intervals[i].end;
    h.representative[i] = Rational(*last);
  }
  collect_points(h);
  return h;
}

std::vector<std::vector<std::int64_t>> delta_table(std::span<const Interval> sorted,
                                                   std::span<const std::int64_t> weights) {
  check_weights(sorted, weights);
  const std::size_t n = sorted.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (sorted[i].end < sorted[i - 1].end) throw InvalidArgument("delta_table: intervals not sorted by end");
  }
  std::vector<std::size_t> by_start(n);
  std::iota(by_start.begin(), by_start.end(), std::size_t{0});
  std::stable_sort(by_start.begin(), by_start.end(),
                   [&](std::size_t a, std::size_t b) { return sorted[a].start < sorted[b].start; });

  std::vector<std::vector<std::int64_t>> delta(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (std::size_t b = 1; b <= n; ++b) {
    const Slot db = sorted[b - 1].end;
    // Members of C_b = {i : r_i <= d_b <= d_i} in start order; walking a
    // upward retires those with r_i <= d_a.
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sorted[i].start <= db && db <= sorted[i].end) total += weight_of(weights, i);
    }
    delta[0][b] = total;
    std::size_t p = 0;
    std::int64_t retired = 0;
    for (std::size_t a = 1; a < b; ++a) {
      const Slot da = sorted[a - 1].end;
      while (p < n && sorted[by_start[p]].start <= da) {
        std::size_t i = by_start[p++];
        if (sorted[i].start <= db && db <= sorted[i].end) retired += weight_of(weights, i);
      }
      delta[a][b] = total - retired;
    }
  }
  return delta;
}

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 4;

// Budgeted max-hit DP over end-sorted intervals. T[g][b]: best weight with
// exactly g points, the last at d_b.
struct HitTables {
  std::vector<Interval> sorted;
  std::vector<std::size_t> order;
  std::vector<std::vector<std::int64_t>> delta;
  std::vector<std::vector<std::int64_t>> t{};
  std::vector<std::vector<std::uint32_t>> arg{};

  HitTables(std::span<const Interval> iv, std::span<const std::int64_t> w) : order(by_end(iv)) {
    check_weights(iv, w);
    std::vector<std::int64_t> sw;
    for (auto i : order) {
      sorted.push_back(iv[i]);
      if (!w.empty()) sw.push_back(w[i]);
    }
    delta = delta_table(sorted, sw);
    const std::size_t n = sorted.size();
    t.push_back(std::vector<std::int64_t>(n + 1, kNegInf));
    t[0][0] = 0;
    arg.emplace_back(n + 1, 0);
  }

  // Adds layer g = t.size(); returns its best value over b.
  std::int64_t add_layer() {
    const std::size_t n = sorted.size();
    const auto& prev = t.back();
    std::vector<std::int64_t> cur(n + 1, kNegInf);
    std::vector<std::uint32_t> a_of(n + 1, 0);
    std::int64_t best = kNegInf;
    for (std::size_t b = 1; b <= n; ++b) {
      for (std::size_t a = 0; a < b; ++a) {
        if (prev[a] == kNegInf) continue;
        std::int64_t v = prev[a] + delta[a][b];
        if (v > cur[b]) {
          cur[b] = v;
          a_of[b] = static_cast<std::uint32_t>(a);
        }
      }
      best = std::max(best, cur[b]);
    }
    t.push_back(std::move(cur));
    arg.push_back(std::move(a_of));
    return best;
  }

  HittingSet witness(std::size_t g, std::span<const Interval> original) const {
    std::size_t b = 0;
    for (std::size_t c = 1; c < t[g].size(); ++c) {
      if (b == 0 || t[g][c] > t[g][b]) b = c;
    }
    std::vector<Slot> pts;
    for (std::size_t layer = g; layer > 0 && b > 0; --layer) {
      pts.push_back(sorted[b - 1].end);
      b = arg[layer][b];
    }
    return hit_with(original, std::move(pts));
  }
};

}  // namespace

HitResult max_hit_budget(std::span<const Interval> intervals, std::int64_t budget,
                         std::span<const std::int64_t> weights) {
  if (budget <= 0) throw InvalidArgument("max_hit_budget: budget must be positive");
  HitResult out;
  if (intervals.empty()) return out;
  HitTables tab(intervals, weights);
  const auto g_max = static_cast<std::size_t>(
      std::min<std::int64_t>(budget, static_cast<std::int64_t>(intervals.size())));
  std::size_t best_g = 1;
  std::int64_t best = kNegInf;
  for (std::size_t g = 1; g <= g_max; ++g) {
    std::int64_t v = tab.add_layer();
    if (v > best) {
      best = v;
      best_g = g;
    }
  }
  out.value = best;
  out.hitting = tab.witness(best_g, intervals);
  return out;
}

HitCountResult min_hit_with_throughput(std::span<const Interval> intervals, std::int64_t m,
                                       std::span<const std::int64_t> weights) {
  check_weights(intervals, weights);
  HitCountResult out;
  out.hitting.representative.resize(intervals.size());
  if (m <= 0) return out;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < intervals.size(); ++i) total += weight_of(weights, i);
  if (m > total) {
    throw InfeasibleError("throughput " + std::to_string(m) + " exceeds total weight " +
                          std::to_string(total));
  }
  HitTables tab(intervals, weights);
  for (std::size_t g = 1; g <= intervals.size(); ++g) {
    if (tab.add_layer() >= m) {
      out.points = static_cast<std::int64_t>(g);
      out.hitting = tab.witness(g, intervals);
      return out;
    }
  }
  throw InfeasibleError("throughput " + std::to_string(m) + " is unreachable");
}

namespace {

// Viable(p/q) with every coordinate scaled by q so the pass is integral.
ViableResult viable_scaled(std::span<const Interval> iv, std::int64_t p, std::int64_t q) {
  ViableResult out;
  const std::size_t n = iv.size();
  out.hitting.representative.resize(n);
  if (n == 0) {
    out.viable = true;
    return out;
  }
  auto ends = by_end(iv);
  std::vector<std::size_t> starts(n);
  std::iota(starts.begin(), starts.end(), std::size_t{0});
  std::stable_sort(starts.begin(), starts.end(),
                   [&](std::size_t a, std::size_t b) { return iv[a].start < iv[b].start; });

  using Wide = detail::Wide;
  std::vector<Wide> h(n);
  std::vector<bool> done(n, false);
  const std::size_t first = ends[0];
  Wide last = static_cast<Wide>(iv[first].end) * q;
  h[first] = last;
  done[first] = true;

  using Item = std::pair<Slot, std::size_t>;  // (end, index)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pending;
  std::size_t ptr = 0;
  for (std::size_t step = 1; step < n; ++step) {
    const Wide z = last + p;
    while (ptr < n && static_cast<Wide>(iv[starts[ptr]].start) * q <= z) {
      std::size_t j = starts[ptr++];
      if (!done[j]) pending.emplace(iv[j].end, j);
    }
    if (pending.empty()) return out;
    auto [d, j] = pending.top();
    pending.pop();
    const Wide dq = static_cast<Wide>(d) * q;
    h[j] = dq <= z ? dq : z;
    done[j] = true;
    last = std::max(last, h[j]);
  }
  out.viable = true;
  for (std::size_t j = 0; j < n; ++j) {
    out.hitting.representative[j] = Rational(static_cast<std::int64_t>(h[j]), q);
  }
  collect_points(out.hitting);
  return out;
}

std::vector<std::int64_t> positive_differences(std::span<const Interval> iv) {
  std::vector<std::int64_t> d;
  for (const auto& a : iv) {
    for (const auto& b : iv) {
      if (a.start > b.end) d.push_back(a.start - b.end);
    }
  }
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

bool all_meet_first_end(std::span<const Interval> iv) {
  Slot d1 = std::numeric_limits<Slot>::max();
  Slot rmax = std::numeric_limits<Slot>::min();
  for (const auto& i : iv) {
    d1 = std::min(d1, i.end);
    rmax = std::max(rmax, i.start);
  }
  return rmax <= d1;
}

// Smallest viable value in an ascending list that ends with a viable one.
MaxGapResult first_viable(std::span<const Interval> iv, const std::vector<Rational>& cands) {
  std::size_t lo = 0, hi = cands.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (viable(iv, cands[mid]).viable) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return {cands[lo], viable(iv, cands[lo]).hitting};
}

}  // namespace

ViableResult viable(std::span<const Interval> intervals, const Rational& lambda) {
  if (lambda < Rational(0)) return {false, {}};
  return viable_scaled(intervals, lambda.num(), lambda.den());
}

MaxGapResult min_max_gap_cont(std::span<const Interval> intervals) {
  if (intervals.empty()) throw InvalidArgument("min_max_gap_cont: no intervals");
  const auto n = static_cast<std::int64_t>(intervals.size());
  if (all_meet_first_end(intervals)) return {Rational(0), viable(intervals, Rational(0)).hitting};

  const std::vector<std::int64_t> delta = positive_differences(intervals);
  auto at = [&](std::int64_t u, std::int64_t k) { return Rational(u, k); };
  auto ok = [&](const Rational& x) { return viable(intervals, x).viable; };

  if (ok(at(delta.front(), n - 1))) {
    Rational x = at(delta.front(), n - 1);
    return {x, viable(intervals, x).hitting};
  }
  // v: largest u in delta with u/(n-1) not viable.
  std::size_t lo = 0, hi = delta.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    if (ok(at(delta[mid], n - 1))) {
      hi = mid - 1;
    } else {
      lo = mid;
    }
  }
  const std::int64_t v = delta[lo];
  std::optional<std::int64_t> w;
  if (lo + 1 < delta.size()) w = delta[lo + 1];
  if (!ok(Rational(v))) {
    if (!w) throw Error("min_max_gap_cont: largest candidate is not viable");
    Rational x = at(*w, n - 1);
    return {x, viable(intervals, x).hitting};
  }
  // k0: largest k with v/k viable.
  std::int64_t klo = 1, khi = n - 1;
  while (klo < khi) {
    std::int64_t mid = klo + (khi - klo + 1) / 2;
    if (ok(at(v, mid))) {
      klo = mid;
    } else {
      khi = mid - 1;
    }
  }
  const std::int64_t k0 = klo;
  std::vector<Rational> cands;
  for (std::int64_t u : delta) {
    if (u > v) break;
    // v/(k0+1) < u
    if (static_cast<detail::Wide>(u) * (k0 + 1) <= v) continue;
    const auto k = static_cast<std::int64_t>((static_cast<detail::Wide>(k0) * u + v - 1) / v);
    if (k >= 1 && k <= n - 1) cands.push_back(at(u, k));
  }
  if (w) cands.push_back(at(*w, n - 1));
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return first_viable(intervals, cands);
}

std::vector<Rational> lambda_candidates(std::span<const Interval> intervals) {
  const auto n = static_cast<std::int64_t>(intervals.size());
  std::vector<Rational> out{Rational(0)};
  for (const auto& a : intervals) {
    for (const auto& b : intervals) {
      if (a.start <= b.end) continue;
      for (std::int64_t k = 1; k <= n - 1; ++k) out.emplace_back(a.start - b.end, k);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MaxGapResult min_max_gap_cont_reference(std::span<const Interval> intervals) {
  if (intervals.empty()) throw InvalidArgument("min_max_gap_cont_reference: no intervals");
  return first_viable(intervals, lambda_candidates(intervals));
}

std::vector<Slot> min_points_flow_bound(std::span<const Slot> sorted_releases, std::int64_t f) {
  if (f < 0) throw InvalidArgument("flow bound must be non-negative");
  if (!std::is_sorted(sorted_releases.begin(), sorted_releases.end())) {
    throw InvalidArgument("releases must be sorted");
  }
  std::vector<Slot> pts;
  for (Slot r : sorted_releases) {
    if (pts.empty() || r > pts.back()) pts.push_back(r + f);
  }
  return pts;
}

PointFlowResult min_max_flow_cont(std::span<const Slot> sorted_releases, std::int64_t budget) {
  if (budget <= 0) throw InvalidArgument("point budget must be positive");
  if (!std::is_sorted(sorted_releases.begin(), sorted_releases.end())) {
    throw InvalidArgument("releases must be sorted");
  }
  PointFlowResult out;
  if (sorted_releases.empty()) return out;
  std::vector<std::int64_t> x(sorted_releases.begin(), sorted_releases.end());
  std::vector<std::int64_t> y;
  for (auto it = x.rbegin(); it != x.rend(); ++it) y.push_back(-*it);
  auto ok = [&](std::int64_t f) {
    return f >= 0 &&
           static_cast<std::int64_t>(min_points_flow_bound(sorted_releases, f).size()) <= budget;
  };
  std::int64_t p = 1, q = static_cast<std::int64_t>(x.size() * y.size());
  while (p < q) {
    std::int64_t mid = p + (q - p) / 2;
    if (ok(select_kth(x, y, mid))) {
      q = mid;
    } else {
      p = mid + 1;
    }
  }
  out.value = select_kth(x, y, p);
  out.points = min_points_flow_bound(sorted_releases, out.value);
  return out;
}

namespace {

// Releases i..j (1-based) served by one point at r_j.
struct PointCost {
  std::span<const Slot> r;
  std::vector<std::int64_t> prefix;

  explicit PointCost(std::span<const Slot> rel) : r(rel), prefix(rel.size() + 1, 0) {
    for (std::size_t b = 0; b < r.size(); ++b) prefix[b + 1] = prefix[b] + r[b];
  }
  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return static_cast<std::int64_t>(j - i + 1) * r[j - 1] - (prefix[j] - prefix[i - 1]);
  }
};

}  // namespace

PointFlowResult min_total_flow_cont(std::span<const Slot> sorted_releases, std::int64_t budget) {
  if (budget <= 0) throw InvalidArgument("point budget must be positive");
  if (!std::is_sorted(sorted_releases.begin(), sorted_releases.end())) {
    throw InvalidArgument("releases must be sorted");
  }
  PointFlowResult out;
  const std::size_t n = sorted_releases.size();
  if (n == 0) return out;
  const auto layers =
      static_cast<std::size_t>(std::min<std::int64_t>(budget - 1, static_cast<std::int64_t>(n) - 1));
  PointCost cost(sorted_releases);
  auto dp = detail::layered_monge(n, layers, cost);
  out.value = dp.last[n];
  for (auto [i, j] : detail::segments_of(dp, n)) {
    if (out.points.empty() || out.points.back() != sorted_releases[j - 1]) {
      out.points.push_back(sorted_releases[j - 1]);
    }
  }
  return out;
}

std::int64_t min_points_total_flow_cont(std::span<const Slot> sorted_releases, std::int64_t f) {
  if (f < 0) throw InvalidArgument("total-flow bound must be non-negative");
  if (sorted_releases.empty()) return 0;
  std::int64_t lo = 1, hi = static_cast<std::int64_t>(sorted_releases.size());
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (min_total_flow_cont(sorted_releases, mid).value <= f) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace gapsched
