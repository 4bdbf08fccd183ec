#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace gapsched {

// Ranks in the multiset {x + y : x in X, y in Y} for ascending X and Y:
// (number of sums <= v, number of sums < v).
std::pair<std::int64_t, std::int64_t> rank_of(std::span<const std::int64_t> X,
                                              std::span<const std::int64_t> Y, std::int64_t v);

// k-th smallest sum (1-based, duplicates counted).
std::int64_t select_kth(std::span<const std::int64_t> X, std::span<const std::int64_t> Y,
                        std::int64_t k);

}  // namespace gapsched
