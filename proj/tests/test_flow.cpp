#include <gtest/gtest.h>

#include "support.hpp"

using namespace gapsched;
using gapsched::testing::flow_limits;
using gapsched::testing::Gen;

namespace {

// Simulates a block holding sorted jobs i..j that ends at r_j.
std::int64_t simulate_block(const std::vector<Slot>& r, std::size_t i, std::size_t j) {
  std::int64_t flow = 0;
  for (std::size_t k = i; k <= j; ++k) flow += r[j - 1] - static_cast<Slot>(j - k) - r[k - 1];
  return flow;
}

void check_block_schedule(const std::vector<Slot>& r, const BlockSchedule& s, std::int64_t gaps) {
  ASSERT_EQ(s.slots.size(), r.size());
  std::vector<Slot> busy = s.slots;
  for (std::size_t k = 0; k < r.size(); ++k) EXPECT_GE(s.slots[k], r[k]);
  std::sort(busy.begin(), busy.end());
  EXPECT_TRUE(std::adjacent_find(busy.begin(), busy.end()) == busy.end());
  EXPECT_LE(count_gaps(busy), gaps);
  for (auto [i, j] : s.blocks) EXPECT_EQ(s.slots[j - 1], r[j - 1]);  // block ends at a release
}

}  // namespace

TEST(BlockCost, Examples) {
  FlowInstance a({0, 3});
  EXPECT_EQ(block_cost(a, 1, 1), 0);
  EXPECT_EQ(block_cost(a, 1, 2), 2);
  FlowInstance b({0, 1, 2});
  EXPECT_EQ(block_cost(b, 1, 3), 0);
  EXPECT_THROW(block_cost(b, 0, 2), InvalidArgument);
}

TEST(BlockCost, MatchesSimulation) {
  Gen gen(41);
  for (int it = 0; it < 200; ++it) {
    auto r = gen.releases(static_cast<std::size_t>(gen.range(1, 12)), 40, true);
    FlowInstance inst(r);
    for (std::size_t i = 1; i <= r.size(); ++i) {
      for (std::size_t j = i; j <= r.size(); ++j) EXPECT_EQ(block_cost(inst, i, j), simulate_block(r, i, j));
    }
  }
}

TEST(BlockCost, QuadrangleInequality) {
  Gen gen(42);
  for (int it = 0; it < 100; ++it) {
    auto r = gen.releases(static_cast<std::size_t>(gen.range(2, 60)), 400, true);
    FlowInstance inst(r);
    const std::size_t n = r.size();
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        EXPECT_LE(block_cost(inst, i, j) + block_cost(inst, i + 1, j + 1),
                  block_cost(inst, i, j + 1) + block_cost(inst, i + 1, j));
      }
    }
  }
}

TEST(MinTotalFlow, Examples) {
  EXPECT_EQ(min_total_flow(FlowInstance({0, 1, 2}), 0).total_flow, 0);
  EXPECT_EQ(min_total_flow(FlowInstance({0, 10}), 1).total_flow, 0);
  auto r = min_total_flow(FlowInstance({0, 10}), 0);
  EXPECT_EQ(r.total_flow, 9);
  EXPECT_EQ(r.schedule.slots, (std::vector<Slot>{9, 10}));
  EXPECT_THROW(min_total_flow(FlowInstance({0, 1}), -1), InvalidArgument);
}

TEST(MinTotalFlow, OracleValues) {
  // Values frozen from the exhaustive oracle.
  EXPECT_EQ(min_total_flow(FlowInstance({0, 0, 0}), 0).total_flow, 3);
  EXPECT_EQ(min_total_flow(FlowInstance({0, 1, 5}), 0).total_flow, 6);
  EXPECT_EQ(min_total_flow(FlowInstance({0, 0, 2, 5, 9, 10, 3}), 0).total_flow, 20);
  EXPECT_EQ(min_total_flow(FlowInstance({0, 0, 2, 5, 9, 10, 3}), 1).total_flow, 4);
  EXPECT_EQ(min_total_flow(FlowInstance({0, 0, 2, 5, 9, 10, 3}), 2).total_flow, 1);
  EXPECT_EQ(min_total_flow(FlowInstance({3, 0, 7, 2, 11, 4, 12, 6}), 1).total_flow, 5);
  EXPECT_EQ(min_total_flow(FlowInstance({3, 0, 7, 2, 11, 4, 12, 6}), 3).total_flow, 0);
}

TEST(MinTotalFlow, EnginesAgreeAndNonIncreasing) {
  Gen gen(43);
  for (int it = 0; it < 60; ++it) {
    auto r = gen.releases(static_cast<std::size_t>(gen.range(1, 40)), 120, gen.coin());
    FlowInstance inst(r);
    std::int64_t prev = std::numeric_limits<std::int64_t>::max();
    const auto n = static_cast<std::int64_t>(r.size());
    for (std::int64_t g = 0; g < n; ++g) {
      auto fast = min_total_flow(inst, g);
      auto slow = min_total_flow(inst, g, FlowEngine::naive);
      ASSERT_EQ(fast.total_flow, slow.total_flow);
      EXPECT_LE(fast.total_flow, prev);
      prev = fast.total_flow;
      if (inst.distinct()) {
        check_block_schedule(r, fast.schedule, g);
        check_block_schedule(r, slow.schedule, g);
      }
    }
    if (inst.distinct()) EXPECT_EQ(prev, 0);
  }
}

TEST(MinTotalFlow, TimedNaiveFinishes) {
  FlowInstance inst({0, 4, 9, 11, 30});
  auto run = min_total_flow_naive_timed(inst, 2, std::chrono::seconds(10));
  ASSERT_TRUE(run.result.has_value());
  EXPECT_EQ(run.result->total_flow, min_total_flow(inst, 2).total_flow);
}

TEST(MinGapsTotalFlow, Examples) {
  FlowInstance inst({0, 10});
  EXPECT_EQ(min_gaps_total_flow(inst, 9).gaps, 0);
  EXPECT_EQ(min_gaps_total_flow(inst, 8).gaps, 1);
  EXPECT_EQ(min_gaps_total_flow(inst, 100).gaps, 0);
  // Zero flow: one block per run of consecutive releases.
  EXPECT_EQ(min_gaps_total_flow(FlowInstance({0, 1, 2, 5, 6, 9}), 0).gaps, 2);
  EXPECT_THROW(min_gaps_total_flow(inst, -1), InvalidArgument);
}

TEST(MinGapsMaxFlow, Examples) {
  EXPECT_EQ(min_gaps_max_flow(std::vector<Slot>{0, 1, 2}, 0).gaps, 0);
  EXPECT_EQ(min_gaps_max_flow(std::vector<Slot>{0, 5}, 2).gaps, 1);
  EXPECT_THROW(min_gaps_max_flow(std::vector<Slot>{0, 0}, 0), InfeasibleError);
  EXPECT_FALSE(min_gaps_max_flow_count(std::vector<Slot>{0, 0}, 0).has_value());
}

TEST(MinMaxFlow, Examples) {
  EXPECT_EQ(min_max_flow(std::vector<Slot>{0, 5}, 1).max_flow, 0);
  auto r = min_max_flow(std::vector<Slot>{0, 5}, 0);
  EXPECT_EQ(r.max_flow, 4);
  EXPECT_EQ(r.slots, (std::vector<Slot>{4, 5}));
  EXPECT_EQ(min_max_flow(std::vector<Slot>{0, 0, 0}, 0).max_flow, 2);
}

TEST(MinMaxFlow, CandidateMembershipAndBracketing) {
  Gen gen(44);
  for (int it = 0; it < 300; ++it) {
    auto r = gen.releases(static_cast<std::size_t>(gen.range(1, 25)), 60);
    const std::int64_t g = gen.range(0, 5);
    auto res = min_max_flow(r, g);
    auto [x, y] = max_flow_candidate_axes(r);
    std::vector<std::int64_t> phi;
    for (auto a : x) {
      for (auto b : y) phi.push_back(a + b);
    }
    std::sort(phi.begin(), phi.end());
    EXPECT_TRUE(std::binary_search(phi.begin(), phi.end(), res.max_flow));
    auto at = min_gaps_max_flow_count(r, res.max_flow);
    ASSERT_TRUE(at.has_value());
    EXPECT_LE(*at, g);
    auto prev = std::lower_bound(phi.begin(), phi.end(), res.max_flow);
    if (prev != phi.begin()) {
      auto below = min_gaps_max_flow_count(r, *(prev - 1));
      EXPECT_TRUE(!below || *below > g);
    }
  }
}

TEST(FlowSolvers, MatchOracle) {
  Gen gen(45);
  for (int it = 0; it < 400; ++it) {
    auto r = gen.releases(static_cast<std::size_t>(gen.range(1, 7)), 12);
    auto prof = flow_profile(make_release_instance(r), flow_limits());
    for (std::int64_t g = 0; g <= 3; ++g) {
      EXPECT_EQ(min_total_flow(FlowInstance(r), g).total_flow, prof.min_total(g));
      EXPECT_EQ(min_max_flow(r, g).max_flow, prof.min_max(g));
    }
    for (std::int64_t f = 0; f <= 10; ++f) {
      if (auto o = prof.gaps_for_total(f)) EXPECT_EQ(min_gaps_total_flow(FlowInstance(r), f).gaps, *o);
      auto o = prof.gaps_for_max(f);
      auto c = min_gaps_max_flow_count(r, f);
      ASSERT_EQ(c.has_value(), o.has_value());
      if (c) {
        EXPECT_EQ(*c, *o);
        auto s = min_gaps_max_flow(r, f);
        for (std::size_t k = 0; k < r.size(); ++k) EXPECT_LE(s.slots[k] - r[k], f);
        auto busy = s.slots;
        std::sort(busy.begin(), busy.end());
        EXPECT_EQ(count_gaps(busy), s.gaps);
      }
    }
  }
}

TEST(FlowSolvers, InstanceAdaptersValidate) {
  Gen gen(46);
  for (int it = 0; it < 200; ++it) {
    Instance inst = make_release_instance(gen.releases(static_cast<std::size_t>(gen.range(1, 10)), 20));
    std::shuffle(inst.jobs.begin(), inst.jobs.end(), std::mt19937(static_cast<unsigned>(it)));
    const std::int64_t g = gen.range(0, 3);
    auto a = solve_min_total_flow(inst, g);
    Constraints c;
    c.max_gaps = g;
    c.max_total_flow = a.value;
    EXPECT_TRUE(validate(a.schedule, inst, c).empty());
    EXPECT_EQ(gap_stats(a.schedule, inst).total_flow, a.value);
    auto b = solve_min_max_flow(inst, g);
    Constraints d;
    d.max_gaps = g;
    d.max_flow = b.value;
    EXPECT_TRUE(validate(b.schedule, inst, d).empty());
    auto e = solve_min_gaps_max_flow(inst, b.value);
    EXPECT_LE(e.value, g);
    EXPECT_EQ(gap_stats(e.schedule, inst).gap_count, e.value);
  }
}

TEST(FlowSolvers, InfeasibleJobIsNamed) {
  Instance inst = make_release_instance({7, 0, 0});
  try {
    solve_min_gaps_max_flow(inst, 0);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    ASSERT_TRUE(e.job().has_value());
    EXPECT_EQ(inst.jobs[*e.job()].release, 0);
  }
}
