#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gapsched/core.hpp"
#include "gapsched/rational.hpp"

namespace gapsched {

struct Interval {
  std::string id;
  Slot start = 0;
  Slot end = 0;
};

std::vector<Interval> make_intervals(const std::vector<std::pair<Slot, Slot>>& spans);
std::vector<Interval> intervals_of(const Instance& instance);

// Points chosen to hit intervals. `representative[i]` is the point that
// hits interval i (when one was assigned); `points` is the sorted set of
// distinct points used.
struct HittingSet {
  std::vector<std::optional<Rational>> representative;
  std::vector<Rational> points;

  std::size_t size() const { return points.size(); }
};

// Minimum-cardinality hitting set; every point is an interval end.
HittingSet greedy_min_hitting(std::span<const Interval> intervals);

// Δ for deadline-sorted intervals with a virtual point 0 before all of
// them: delta[a][b] (1-based a,b) counts i with d_a < r_i <= d_b <= d_i,
// and delta[0][b] counts intervals containing d_b.
std::vector<std::vector<std::int64_t>> delta_table(std::span<const Interval> sorted,
                                                   std::span<const std::int64_t> weights = {});

struct HitResult {
  std::int64_t value = 0;
  HittingSet hitting;
};

// Most intervals (or weight) hit with at most `budget` points.
HitResult max_hit_budget(std::span<const Interval> intervals, std::int64_t budget,
                         std::span<const std::int64_t> weights = {});

struct HitCountResult {
  std::int64_t points = 0;
  HittingSet hitting;
};

// Fewest points hitting at least `m` intervals (or weight).
HitCountResult min_hit_with_throughput(std::span<const Interval> intervals, std::int64_t m,
                                       std::span<const std::int64_t> weights = {});

struct ViableResult {
  bool viable = false;
  HittingSet hitting;
};

// Is there a hitting set whose consecutive points differ by at most λ?
ViableResult viable(std::span<const Interval> intervals, const Rational& lambda);

struct MaxGapResult {
  Rational lambda;
  HittingSet hitting;
};

// Smallest possible maximum distance between consecutive representatives.
MaxGapResult min_max_gap_cont(std::span<const Interval> intervals);

// Same optimum by sorting the full candidate set {(r_i - d_j)/k} ∪ {0}.
MaxGapResult min_max_gap_cont_reference(std::span<const Interval> intervals);
std::vector<Rational> lambda_candidates(std::span<const Interval> intervals);

// Fewest points so that every release r has a point in [r, r+f].
std::vector<Slot> min_points_flow_bound(std::span<const Slot> sorted_releases, std::int64_t f);

struct PointFlowResult {
  std::int64_t value = 0;
  std::vector<Slot> points;
};

// Smallest f admitting at most `budget` such points.
PointFlowResult min_max_flow_cont(std::span<const Slot> sorted_releases, std::int64_t budget);

// Continuous total flow: at most `budget` points, each release charged the
// distance to the first point at or after it.
PointFlowResult min_total_flow_cont(std::span<const Slot> sorted_releases, std::int64_t budget);
std::int64_t min_points_total_flow_cont(std::span<const Slot> sorted_releases, std::int64_t f);

}  // namespace gapsched
