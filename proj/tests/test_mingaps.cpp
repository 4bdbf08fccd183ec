#include <gtest/gtest.h>

#include <functional>

#include "support.hpp"

using namespace gapsched;
using gapsched::testing::Gen;

namespace {

struct Cell {
  std::int64_t g;
  Slot s;
};

// Least gaps (with a busy slot at release(a)) and latest end among such
// schedules, for jobs 1..k released strictly inside (release(a), release(b))
// placed strictly inside the same range.
Cell brute_cell(const MinGapsTables& t, std::size_t k, std::size_t a, std::size_t b) {
  const Slot ra = t.release(a), rb = t.release(b);
  std::vector<std::size_t> jobs;
  for (std::size_t i = 1; i <= k; ++i) {
    if (ra < t.release(i) && t.release(i) < rb) jobs.push_back(i);
  }
  Cell best{std::numeric_limits<std::int64_t>::max(), 0};
  std::vector<Slot> used{ra};
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == jobs.size()) {
      auto s = used;
      std::sort(s.begin(), s.end());
      const Cell c{count_gaps(s), s.back()};
      if (c.g < best.g || (c.g == best.g && c.s > best.s)) best = c;
      return;
    }
    const std::size_t j = jobs[p];
    for (Slot x = t.release(j); x <= std::min(t.deadline(j), rb - 1); ++x) {
      if (std::find(used.begin(), used.end(), x) != used.end()) continue;
      used.push_back(x);
      rec(p + 1);
      used.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST(MinGaps, Examples) {
  EXPECT_EQ(min_gaps(make_instance({{0, 0}, {5, 5}})).gaps, 1);
  auto r = min_gaps(make_instance({{0, 3}, {1, 2}}));
  EXPECT_EQ(r.gaps, 0);
  EXPECT_EQ(count_gaps(r.schedule.busy_slots()), 0);
  EXPECT_EQ(min_gaps(make_instance({{0, 0}, {0, 5}, {5, 5}})).gaps, 1);
  EXPECT_EQ(min_gaps(Instance{}).gaps, 0);
}

TEST(MinGaps, OracleValues) {
  // Frozen from the exhaustive oracle.
  EXPECT_EQ(min_gaps(make_instance({{0, 0}, {4, 6}, {10, 10}})).gaps, 2);
  EXPECT_EQ(min_gaps(make_instance({{1, 4}, {0, 2}, {3, 9}, {6, 7}, {2, 2}, {8, 11}})).gaps, 1);
  EXPECT_EQ(min_gaps(make_instance({{0, 6}, {0, 6}, {2, 3}, {5, 5}, {9, 12}, {10, 10}, {3, 12}})).gaps, 1);
  EXPECT_EQ(min_gaps(make_instance({{3, 5}, {0, 1}, {7, 7}, {2, 9}, {11, 13}, {4, 4}, {12, 14}, {6, 10}})).gaps, 2);
}

TEST(MinGaps, InfeasibleCarriesWindow) {
  try {
    min_gaps(make_instance({{0, 1}, {0, 1}, {1, 1}}));
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.window(), (Window{0, 1}));
  }
}

TEST(MinGaps, MatchesOracle) {
  Gen gen(51);
  int feasible = 0;
  for (int it = 0; it < 1500; ++it) {
    Instance in = gen.windows(static_cast<std::size_t>(gen.range(1, 7)), 12);
    auto prof = deadline_profile(in, {8, 16});
    if (!prof.feasible) {
      EXPECT_THROW(min_gaps(in), InfeasibleError);
      continue;
    }
    ++feasible;
    auto r = min_gaps(in);
    EXPECT_EQ(r.gaps, prof.min_gaps);
    EXPECT_TRUE(validate(r.schedule, in).empty());
    EXPECT_EQ(count_gaps(r.schedule.busy_slots()), r.gaps);
  }
  EXPECT_GT(feasible, 300);
}

TEST(MinGapsTables, BaseAndCopyCells) {
  auto t = min_gaps_tables(make_instance({{1, 2}, {4, 6}, {5, 9}}));
  const std::size_t n = t.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!t.defined(a, b)) continue;
      EXPECT_EQ(t.G(0, a, b), 0);
      EXPECT_EQ(t.S(0, a, b), t.release(a));
      for (std::size_t k = 1; k < n; ++k) {
        if (!(t.release(a) < t.release(k) && t.release(k) < t.release(b))) {
          EXPECT_EQ(t.G(k, a, b), t.G(k - 1, a, b));
          EXPECT_EQ(t.S(k, a, b), t.S(k - 1, a, b));
        }
      }
    }
  }
}

TEST(MinGapsTables, CellsMatchSubproblemsAndReconstruct) {
  Gen gen(52);
  int checked = 0;
  for (int it = 0; it < 300 && checked < 120; ++it) {
    Instance in = gen.planted(static_cast<std::size_t>(gen.range(2, 5)), 10);
    if (!check_feasible(in).feasible) continue;
    ++checked;
    auto t = min_gaps_tables(in);
    const std::size_t n = t.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (!t.defined(a, b)) continue;
          const Cell want = brute_cell(t, k, a, b);
          ASSERT_EQ(t.G(k, a, b), want.g) << "cell " << k << "," << a << "," << b;
          ASSERT_EQ(t.S(k, a, b), want.s);
          auto part = t.cell_schedule(k, a, b);
          std::vector<Slot> busy{t.release(a)};
          for (auto [j, x] : part) {
            EXPECT_LE(t.release(j), x);
            EXPECT_LE(x, t.deadline(j));
            EXPECT_LT(x, t.release(b));
            busy.push_back(x);
          }
          std::sort(busy.begin(), busy.end());
          EXPECT_TRUE(std::adjacent_find(busy.begin(), busy.end()) == busy.end());
          EXPECT_EQ(count_gaps(busy), t.G(k, a, b));
          EXPECT_EQ(busy.back(), t.S(k, a, b));
        }
      }
    }
  }
  EXPECT_GE(checked, 100);
}
