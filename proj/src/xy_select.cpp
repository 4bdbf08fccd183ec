#include "gapsched/xy_select.hpp"

#include <algorithm>
#include <string>

#include "gapsched/core.hpp"

namespace gapsched {

namespace {

void require_sorted(std::span<const std::int64_t> v, const char* name) {
  if (!std::is_sorted(v.begin(), v.end())) {
    throw InvalidArgument(std::string("xy_select: ") + name + " is not sorted");
  }
}

// Sums x + y <= v (strict=false) or < v (strict=true), staircase walk.
std::int64_t count_below(std::span<const std::int64_t> X, std::span<const std::int64_t> Y,
                         std::int64_t v, bool strict) {
  std::int64_t count = 0;
  std::size_t j = Y.size();
  for (std::int64_t x : X) {
    while (j > 0 && (strict ? x + Y[j - 1] >= v : x + Y[j - 1] > v)) --j;
    if (j == 0) break;
    count += static_cast<std::int64_t>(j);
  }
  return count;
}

}  // namespace

std::pair<std::int64_t, std::int64_t> rank_of(std::span<const std::int64_t> X,
                                              std::span<const std::int64_t> Y, std::int64_t v) {
  require_sorted(X, "X");
  require_sorted(Y, "Y");
  return {count_below(X, Y, v, false), count_below(X, Y, v, true)};
}

std::int64_t select_kth(std::span<const std::int64_t> X, std::span<const std::int64_t> Y,
                        std::int64_t k) {
  require_sorted(X, "X");
  require_sorted(Y, "Y");
  std::int64_t total = static_cast<std::int64_t>(X.size()) * static_cast<std::int64_t>(Y.size());
  if (k < 1 || k > total) {
    throw InvalidArgument("select_kth: k=" + std::to_string(k) + " outside [1," +
                          std::to_string(total) + "]");
  }
  std::int64_t lo = X.front() + Y.front();
  std::int64_t hi = X.back() + Y.back();
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (count_below(X, Y, mid, false) >= k) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace gapsched
