#pragma once

// Layered partition DP over a sorted sequence 1..n:
//   F_0[j] = W(1,j),  F_g[j] = min_{1<=i<=j} F_{g-1}[i-1] + W(i,j),  F_g[0] = 0.
// The last segment of an optimal F_g[j] starts at arg[g][j]. Two engines:
// the plain O(n^2) scan and divide and conquer over monotone argmins,
// valid when W satisfies the quadrangle inequality.

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace gapsched::detail {

struct LayeredDp {
  std::vector<std::int64_t> last;                // F_layers[j], j = 0..n
  std::vector<std::vector<std::uint32_t>> arg;   // arg[g][j] for g >= 1
};

template <class Cost>
void layer0(std::size_t n, Cost&& w, std::vector<std::int64_t>& out) {
  out.assign(n + 1, 0);
  for (std::size_t j = 1; j <= n; ++j) out[j] = w(1, j);
}

template <class Cost>
void dc_layer(std::size_t jlo, std::size_t jhi, std::size_t ilo, std::size_t ihi,
              const std::vector<std::int64_t>& prev, Cost& w, std::vector<std::int64_t>& cur,
              std::vector<std::uint32_t>& arg) {
  while (jlo <= jhi) {
    std::size_t mid = jlo + (jhi - jlo) / 2;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::size_t best_i = ilo;
    std::size_t top = std::min(ihi, mid);
    for (std::size_t i = ilo; i <= top; ++i) {
      std::int64_t v = prev[i - 1] + w(i, mid);
      if (v < best) {
        best = v;
        best_i = i;
      }
    }
    cur[mid] = best;
    arg[mid] = static_cast<std::uint32_t>(best_i);
    // Recurse on the smaller side, loop on the other to bound stack depth.
    if (mid - jlo < jhi - mid) {
      if (mid > jlo) dc_layer(jlo, mid - 1, ilo, best_i, prev, w, cur, arg);
      jlo = mid + 1;
      ilo = best_i;
    } else {
      if (mid < jhi) dc_layer(mid + 1, jhi, best_i, ihi, prev, w, cur, arg);
      if (mid == 0) break;
      jhi = mid - 1;
      ihi = best_i;
    }
  }
}

template <class Cost>
LayeredDp layered_monge(std::size_t n, std::size_t layers, Cost w) {
  LayeredDp dp;
  layer0(n, w, dp.last);
  std::vector<std::int64_t> cur(n + 1, 0);
  for (std::size_t g = 1; g <= layers; ++g) {
    dp.arg.emplace_back(n + 1, 0);
    if (n > 0) dc_layer(1, n, 1, n, dp.last, w, cur, dp.arg.back());
    cur[0] = 0;
    std::swap(cur, dp.last);
  }
  return dp;
}

// Plain scan. Returns nullopt when `deadline` passes first; `progress`
// receives the fraction of inner-loop work completed.
template <class Cost>
std::optional<LayeredDp> layered_naive(std::size_t n, std::size_t layers, Cost w,
                                       std::optional<std::chrono::steady_clock::time_point> deadline = {},
                                       double* progress = nullptr) {
  LayeredDp dp;
  layer0(n, w, dp.last);
  std::vector<std::int64_t> cur(n + 1, 0);
  const auto tri = [](double j) { return j * (j + 1) / 2; };
  const double work = static_cast<double>(layers) * tri(static_cast<double>(n));
  for (std::size_t g = 1; g <= layers; ++g) {
    dp.arg.emplace_back(n + 1, 0);
    auto& arg = dp.arg.back();
    for (std::size_t j = 1; j <= n; ++j) {
      if (deadline && (j & 63) == 0 && std::chrono::steady_clock::now() > *deadline) {
        if (progress) {
          *progress = (static_cast<double>(g - 1) * tri(static_cast<double>(n)) + tri(static_cast<double>(j))) / work;
        }
        return std::nullopt;
      }
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      std::size_t best_i = 1;
      for (std::size_t i = 1; i <= j; ++i) {
        std::int64_t v = dp.last[i - 1] + w(i, j);
        if (v < best) {
          best = v;
          best_i = i;
        }
      }
      cur[j] = best;
      arg[j] = static_cast<std::uint32_t>(best_i);
    }
    cur[0] = 0;
    std::swap(cur, dp.last);
  }
  if (progress) *progress = 1.0;
  return dp;
}

// Segments [i, j] (1-based) of the optimum for F_layers[n], left to right.
inline std::vector<std::pair<std::size_t, std::size_t>> segments_of(const LayeredDp& dp, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> segs;
  std::size_t j = n;
  std::size_t g = dp.arg.size();
  while (j > 0) {
    std::size_t i = g > 0 ? dp.arg[g - 1][j] : 1;
    segs.emplace_back(i, j);
    j = i - 1;
    if (g > 0) --g;
  }
  return {segs.rbegin(), segs.rend()};
}

}  // namespace gapsched::detail
