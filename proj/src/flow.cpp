#include "gapsched/flow.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "gapsched/xy_select.hpp"
#include "layered_dp.hpp"

namespace gapsched {

FlowInstance::FlowInstance(std::vector<Slot> releases) : r_(std::move(releases)) {
  std::sort(r_.begin(), r_.end());
  prefix_.resize(r_.size() + 1);
  for (std::size_t b = 0; b < r_.size(); ++b) prefix_[b + 1] = prefix_[b] + r_[b];
}

bool FlowInstance::distinct() const {
  return std::adjacent_find(r_.begin(), r_.end()) == r_.end();
}

std::int64_t block_cost(const FlowInstance& inst, std::size_t i, std::size_t j) {
  if (i < 1 || i > j || j > inst.size()) throw InvalidArgument("block_cost: need 1 <= i <= j <= n");
  const auto len = static_cast<std::int64_t>(j - i);
  return len * inst.release(j) - (len + 1) * len / 2 - inst.prefix(j - 1) + inst.prefix(i - 1);
}

namespace {

// r'_j = max(r_j, r'_{j-1} + 1). A busy set is feasible for sorted releases
// exactly when its k-th slot is >= r'_k, so this changes every schedule's
// total flow by the same constant.
std::vector<Slot> spread(std::span<const Slot> r) {
  std::vector<Slot> out(r.begin(), r.end());
  for (std::size_t j = 1; j < out.size(); ++j) out[j] = std::max(out[j], out[j - 1] + 1);
  return out;
}

BlockSchedule blocks_to_schedule(const FlowInstance& inst,
                                 std::vector<std::pair<std::size_t, std::size_t>> segs) {
  BlockSchedule out;
  out.slots.resize(inst.size());
  for (auto [i, j] : segs) {
    for (std::size_t q = i; q <= j; ++q) {
      out.slots[q - 1] = inst.release(j) - static_cast<Slot>(j - q);
    }
  }
  out.blocks = std::move(segs);
  return out;
}

std::size_t layer_count(std::size_t n, std::int64_t gaps) {
  if (gaps < 0) throw InvalidArgument("gap budget must be non-negative");
  if (n == 0) return 0;
  return static_cast<std::size_t>(std::min<std::int64_t>(gaps, static_cast<std::int64_t>(n) - 1));
}

TotalFlowResult finish(const FlowInstance& spread_inst, std::int64_t offset, const detail::LayeredDp& dp) {
  const std::size_t n = spread_inst.size();
  TotalFlowResult out;
  out.total_flow = dp.last[n] + offset;
  out.schedule = blocks_to_schedule(spread_inst, detail::segments_of(dp, n));
  return out;
}

std::int64_t spread_offset(std::span<const Slot> original, std::span<const Slot> spread_r) {
  std::int64_t off = 0;
  for (std::size_t j = 0; j < original.size(); ++j) off += spread_r[j] - original[j];
  return off;
}

}  // namespace

TotalFlowResult min_total_flow(const FlowInstance& inst, std::int64_t gaps, FlowEngine engine) {
  const std::size_t layers = layer_count(inst.size(), gaps);
  FlowInstance sp(spread(inst.releases()));
  const std::int64_t offset = spread_offset(inst.releases(), sp.releases());
  auto w = [&sp](std::size_t i, std::size_t j) { return block_cost(sp, i, j); };
  if (engine == FlowEngine::monge) {
    return finish(sp, offset, detail::layered_monge(sp.size(), layers, w));
  }
  return finish(sp, offset, *detail::layered_naive(sp.size(), layers, w));
}

TimedFlowRun min_total_flow_naive_timed(const FlowInstance& inst, std::int64_t gaps,
                                        std::chrono::nanoseconds budget) {
  const std::size_t layers = layer_count(inst.size(), gaps);
  FlowInstance sp(spread(inst.releases()));
  const std::int64_t offset = spread_offset(inst.releases(), sp.releases());
  auto w = [&sp](std::size_t i, std::size_t j) { return block_cost(sp, i, j); };
  TimedFlowRun run;
  auto dp = detail::layered_naive(sp.size(), layers, w, std::chrono::steady_clock::now() + budget,
                                  &run.progress);
  if (dp) run.result = finish(sp, offset, *dp);
  return run;
}

GapCountResult min_gaps_total_flow(const FlowInstance& inst, std::int64_t f) {
  if (f < 0) throw InvalidArgument("total-flow bound must be non-negative");
  const std::size_t n = inst.size();
  if (n == 0) return {};
  // F(g) is non-increasing and F(n-1) is the spread offset alone.
  std::int64_t lo = 0, hi = static_cast<std::int64_t>(n) - 1;
  TotalFlowResult best = min_total_flow(inst, hi);
  if (best.total_flow > f) {
    throw InfeasibleError("total flow " + std::to_string(best.total_flow) +
                          " is unavoidable, bound " + std::to_string(f) + " is too small");
  }
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    TotalFlowResult r = min_total_flow(inst, mid);
    if (r.total_flow <= f) {
      hi = mid;
      best = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  GapCountResult out;
  out.slots = std::move(best.schedule.slots);
  out.gaps = count_gaps(out.slots);
  return out;
}

namespace {

void check_sorted(std::span<const Slot> r) {
  if (!std::is_sorted(r.begin(), r.end())) throw InvalidArgument("releases must be sorted");
}

struct Stage1 {
  std::vector<Slot> slots;
  std::optional<std::size_t> late;
};

Stage1 greedy_tentative(std::span<const Slot> r, std::int64_t f) {
  Stage1 s;
  s.slots.resize(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    s.slots[j] = j == 0 ? r[0] : std::max(r[j], s.slots[j - 1] + 1);
    if (!s.late && s.slots[j] - r[j] > f) s.late = j;
  }
  return s;
}

// Stage 2. Blocks of the tentative schedule are swept left to right; the
// current block is pushed right while its worst flow allows, absorbing the
// next tentative block whenever they touch.
std::int64_t coalesce(std::span<const Slot> r, std::span<const Slot> tentative, std::int64_t f,
                      std::vector<Slot>* slots) {
  const std::size_t n = r.size();
  std::int64_t blocks = 0;
  std::size_t i = 0;
  while (i < n) {
    const std::size_t first = i;
    Slot start = tentative[i];
    std::int64_t worst = tentative[i] - r[i];
    std::size_t j = i + 1;
    while (true) {
      const Slot end = start + static_cast<Slot>(j - first) - 1;
      if (j < n && tentative[j] == end + 1) {
        worst = std::max(worst, tentative[j] - r[j]);
        ++j;
        continue;
      }
      const std::int64_t room = f - worst;
      const std::int64_t delta = j < n ? std::min(tentative[j] - end - 1, room) : room;
      if (delta <= 0) break;
      start += delta;
      worst += delta;
      assert(worst <= f);
    }
    if (slots) {
      for (std::size_t q = first; q < j; ++q) (*slots)[q] = start + static_cast<Slot>(q - first);
    }
    ++blocks;
    i = j;
  }
  return blocks == 0 ? 0 : blocks - 1;
}

}  // namespace

GapCountResult min_gaps_max_flow(std::span<const Slot> sorted_releases, std::int64_t f) {
  check_sorted(sorted_releases);
  GapCountResult out;
  if (sorted_releases.empty()) return out;
  if (f < 0) throw InfeasibleError("max-flow bound must be non-negative", std::nullopt, 0);
  Stage1 s = greedy_tentative(sorted_releases, f);
  if (s.late) {
    throw InfeasibleError("job at sorted position " + std::to_string(*s.late) +
                              " cannot start within flow " + std::to_string(f),
                          std::nullopt, *s.late);
  }
  out.slots.resize(sorted_releases.size());
  out.gaps = coalesce(sorted_releases, s.slots, f, &out.slots);
  return out;
}

std::optional<std::int64_t> min_gaps_max_flow_count(std::span<const Slot> sorted_releases,
                                                    std::int64_t f) {
  if (sorted_releases.empty()) return 0;
  if (f < 0) return std::nullopt;
  Stage1 s = greedy_tentative(sorted_releases, f);
  if (s.late) return std::nullopt;
  return coalesce(sorted_releases, s.slots, f, nullptr);
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> max_flow_candidate_axes(
    std::span<const Slot> sorted_releases) {
  const std::size_t n = sorted_releases.size();
  std::vector<std::int64_t> x(n), y;
  y.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) x[j] = sorted_releases[j] - static_cast<std::int64_t>(j + 1);
  for (auto v : x) y.push_back(-v);
  for (std::size_t k = 1; k <= n; ++k) y.push_back(static_cast<std::int64_t>(k));
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return {std::move(x), std::move(y)};
}

MaxFlowResult min_max_flow(std::span<const Slot> sorted_releases, std::int64_t gaps) {
  if (gaps < 0) throw InvalidArgument("gap budget must be non-negative");
  check_sorted(sorted_releases);
  MaxFlowResult out;
  if (sorted_releases.empty()) return out;
  auto [x, y] = max_flow_candidate_axes(sorted_releases);
  auto ok = [&](std::int64_t f) {
    auto g = min_gaps_max_flow_count(sorted_releases, f);
    return g && *g <= gaps;
  };
  // Smallest rank in [p, q] whose value passes the decision.
  std::int64_t p = 1, q = static_cast<std::int64_t>(x.size() * y.size());
  if (!ok(select_kth(x, y, q))) throw Error("min_max_flow: largest candidate fails the decision");
  while (p < q) {
    std::int64_t mid = p + (q - p) / 2;
    if (ok(select_kth(x, y, mid))) {
      q = mid;
    } else {
      p = mid + 1;
    }
  }
  out.max_flow = select_kth(x, y, p);
  GapCountResult g = min_gaps_max_flow(sorted_releases, out.max_flow);
  out.gaps = g.gaps;
  out.slots = std::move(g.slots);
  return out;
}

namespace {

// Release order (ties by input index) and the sorted releases.
std::pair<std::vector<std::size_t>, std::vector<Slot>> release_order(const Instance& inst) {
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.jobs[a].release < inst.jobs[b].release;
  });
  std::vector<Slot> r;
  r.reserve(order.size());
  for (auto i : order) r.push_back(inst.jobs[i].release);
  return {std::move(order), std::move(r)};
}

Schedule map_back(const std::vector<std::size_t>& order, const std::vector<Slot>& slots) {
  Schedule s(order.size());
  for (std::size_t q = 0; q < order.size(); ++q) s.assign(order[q], slots[q]);
  return s;
}

}  // namespace

FlowSolve solve_min_total_flow(const Instance& inst, std::int64_t gaps, FlowEngine engine) {
  auto [order, r] = release_order(inst);
  TotalFlowResult res = min_total_flow(FlowInstance(r), gaps, engine);
  return {res.total_flow, map_back(order, res.schedule.slots)};
}

FlowSolve solve_min_gaps_total_flow(const Instance& inst, std::int64_t f) {
  auto [order, r] = release_order(inst);
  GapCountResult res = min_gaps_total_flow(FlowInstance(r), f);
  return {res.gaps, map_back(order, res.slots)};
}

FlowSolve solve_min_gaps_max_flow(const Instance& inst, std::int64_t f) {
  auto [order, r] = release_order(inst);
  try {
    GapCountResult res = min_gaps_max_flow(r, f);
    return {res.gaps, map_back(order, res.slots)};
  } catch (const InfeasibleError& e) {
    std::optional<std::size_t> job;
    std::string what = e.what();
    if (e.job() && *e.job() < order.size()) {
      job = order[*e.job()];
      what = "job " + inst.jobs[*job].id + " cannot start within flow " + std::to_string(f);
    }
    throw InfeasibleError(what, std::nullopt, job);
  }
}

FlowSolve solve_min_max_flow(const Instance& inst, std::int64_t gaps) {
  auto [order, r] = release_order(inst);
  MaxFlowResult res = min_max_flow(r, gaps);
  return {res.max_flow, map_back(order, res.slots)};
}

}  // namespace gapsched
