#include <gtest/gtest.h>

#include "support.hpp"

using namespace gapsched;
using gapsched::testing::Gen;
using gapsched::testing::with_weights;

TEST(MaxThroughput, TightJobs) {
  Instance in = make_instance({{0, 0}, {2, 2}, {4, 4}});
  EXPECT_EQ(max_throughput(in, 0).value, 1);
  EXPECT_EQ(max_throughput(in, 1).value, 2);
  EXPECT_EQ(max_throughput(in, 2).value, 3);
  EXPECT_THROW(max_throughput(in, -1), InvalidArgument);
}

TEST(MaxThroughput, OracleValues) {
  Instance in = make_instance({{1, 4}, {0, 2}, {3, 9}, {6, 7}, {2, 2}, {8, 11}});
  EXPECT_EQ(max_throughput(in, 0).value, 4);
  EXPECT_EQ(max_throughput(in, 1).value, 6);
  Instance w = with_weights(make_instance({{0, 0}, {0, 0}, {2, 2}, {3, 5}, {5, 5}, {9, 9}}), {1, 10, 3, 4, 2, 7});
  EXPECT_EQ(max_throughput(w, 0, true).value, 10);
  EXPECT_EQ(max_throughput(w, 1, true).value, 17);
  EXPECT_EQ(max_throughput(w, 2, true).value, 24);
  EXPECT_EQ(max_throughput(w, 3, true).value, 26);
}

TEST(MinGapsThroughput, Examples) {
  Instance in = make_instance({{0, 0}, {2, 2}, {4, 4}});
  EXPECT_EQ(min_gaps_for_throughput(in, 1).gaps, 0);
  EXPECT_EQ(min_gaps_for_throughput(in, 2).gaps, 1);
  EXPECT_EQ(min_gaps_for_throughput(in, 0).gaps, 0);
  EXPECT_THROW(min_gaps_for_throughput(in, 4), InfeasibleError);
  EXPECT_EQ(min_gaps_for_throughput(make_instance({{0, 3}, {1, 2}, {2, 5}}), 3).gaps, 0);
}

TEST(MaxThroughput, MatchesOracle) {
  Gen gen(71);
  for (int it = 0; it < 600; ++it) {
    Instance in = gen.weighted_windows(static_cast<std::size_t>(gen.range(1, 6)), 10, 9);
    for (bool weighted : {false, true}) {
      auto prof = throughput_profile(in, weighted, {8, 16});
      for (std::int64_t g = 0; g <= 3; ++g) {
        auto r = max_throughput(in, g, weighted);
        const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(g), prof.best.size() - 1);
        EXPECT_EQ(r.value, prof.best[idx]);
        Constraints c;
        c.require_all = false;
        c.max_gaps = g;
        c.min_throughput = r.value;
        c.weighted_throughput = weighted;
        EXPECT_TRUE(validate(r.schedule, in, c).empty());
      }
      for (std::int64_t m = 1; m <= prof.best.back(); ++m) {
        auto r = min_gaps_for_throughput(in, m, weighted);
        EXPECT_EQ(r.gaps, *prof.gaps_for(m));
        // Duality with the budgeted form.
        EXPECT_GE(max_throughput(in, r.gaps, weighted).value, m);
        if (r.gaps > 0) EXPECT_LT(max_throughput(in, r.gaps - 1, weighted).value, m);
        EXPECT_GE(r.value, m);
      }
    }
  }
}
