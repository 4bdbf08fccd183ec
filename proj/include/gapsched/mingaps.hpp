#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "gapsched/core.hpp"

namespace gapsched {

// G/S tables over the sentinel-augmented, deadline-sorted job list.
// Index 0 is the left sentinel, index size()-1 the right one. A cell
// (k,a,b) is defined when release(a) < release(b) and covers jobs 1..k
// released strictly between them; G counts gaps of the partial schedule
// with a slot at release(a) prepended, S is the latest possible end.
class MinGapsTables {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::size_t size() const { return r_.size(); }
  Slot release(std::size_t i) const { return r_[i]; }
  Slot deadline(std::size_t i) const { return d_[i]; }
  bool defined(std::size_t a, std::size_t b) const { return r_[a] < r_[b]; }

  std::int64_t G(std::size_t k, std::size_t a, std::size_t b) const { return g_[at(k, a, b)]; }
  Slot S(std::size_t k, std::size_t a, std::size_t b) const { return s_[at(k, a, b)]; }

  // Input index of an augmented job, npos for the sentinels.
  std::size_t origin(std::size_t i) const { return origin_[i]; }

  // A partial schedule realizing cell (k,a,b): (augmented job, slot) pairs
  // with exactly G gaps (counting release(a)) and last slot S.
  std::vector<std::pair<std::size_t, Slot>> cell_schedule(std::size_t k, std::size_t a,
                                                          std::size_t b) const;

 private:
  friend MinGapsTables min_gaps_tables(const Instance& instance);

  std::size_t at(std::size_t k, std::size_t a, std::size_t b) const {
    return (k * size() + a) * size() + b;
  }

  std::vector<Slot> r_, d_;
  std::vector<std::size_t> origin_;
  std::vector<std::int32_t> g_;
  std::vector<Slot> s_;
};

MinGapsTables min_gaps_tables(const Instance& instance);

struct MinGapsResult {
  std::int64_t gaps = 0;
  Schedule schedule;
};

// Fewest gaps over schedules of all jobs. Throws InfeasibleError with a
// Hall window when no such schedule exists.
MinGapsResult min_gaps(const Instance& instance);

}  // namespace gapsched
