// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 on any
// failure. GAPSCHED_ACCEPT_QUICK=1 shrinks the sample sizes for smoke runs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "bench.hpp"
#include "support.hpp"

using namespace gapsched;
using gapsched::testing::Gen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool quick() {
  const char* q = std::getenv("GAPSCHED_ACCEPT_QUICK");
  return q && std::string(q) == "1";
}

int scaled(int full, int small) { return quick() ? small : full; }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few mismatches of a criterion.
class Tally {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) first_ += (first_.empty() ? "" : "; ") + what();
  }
  long checks() const { return checks_; }
  long failures() const { return failures_; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks, " << failures_ << " mismatches";
    if (!first_.empty()) s << " (" << first_ << ")";
    return s.str();
  }

 private:
  long checks_ = 0, failures_ = 0;
  std::string first_;
};

std::string show(const Instance& in) {
  std::ostringstream s;
  s << "{";
  for (const Job& j : in.jobs) {
    s << "(" << j.release;
    if (j.deadline) s << "," << *j.deadline;
    if (j.weight != 1) s << ";w" << j.weight;
    s << ")";
  }
  s << "}";
  return s.str();
}

template <class F>
std::optional<std::int64_t> value_or_infeasible(F&& f) {
  try {
    return f();
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
}

// Every deadline objective against the oracle profiles.
void compare_deadline(const Instance& in, Tally& t, long& feasible) {
  const OracleLimits lim{8, 16};
  auto prof = deadline_profile(in, lim);
  if (prof.feasible) {
    ++feasible;
    t.check(min_gaps(in).gaps == prof.min_gaps, [&] { return "min_gaps " + show(in); });
    t.check(max_gaps(in).gaps == prof.max_gaps, [&] { return "max_gaps " + show(in); });
    t.check(min_max_gap(in).max_separation == prof.min_max_separation,
            [&] { return "min_max_gap " + show(in); });
  } else {
    t.check(!value_or_infeasible([&] { return min_gaps(in).gaps; }), [&] { return "min_gaps feasibility " + show(in); });
  }
  for (bool weighted : {false, true}) {
    auto tp = throughput_profile(in, weighted, lim);
    for (std::int64_t g = 0; g <= 3; ++g) {
      const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(g), tp.best.size() - 1);
      t.check(max_throughput(in, g, weighted).value == tp.best[idx],
              [&] { return "max_throughput g=" + std::to_string(g) + " " + show(in); });
    }
    for (std::int64_t m = 1; m <= tp.best.back(); ++m) {
      t.check(min_gaps_for_throughput(in, m, weighted).gaps == *tp.gaps_for(m),
              [&] { return "min_gaps_for_throughput m=" + std::to_string(m) + " " + show(in); });
    }
    t.check(!value_or_infeasible([&] { return min_gaps_for_throughput(in, tp.best.back() + 1, weighted).gaps; }),
            [&] { return "min_gaps_for_throughput unreachable " + show(in); });
  }
}

void compare_flow(const std::vector<Slot>& r, Tally& t) {
  Instance in = make_release_instance(r);
  auto prof = flow_profile(in, gapsched::testing::flow_limits());
  FlowInstance fi(r);
  for (std::int64_t g = 0; g <= 3; ++g) {
    t.check(min_total_flow(fi, g).total_flow == prof.min_total(g),
            [&] { return "min_total_flow g=" + std::to_string(g) + " " + show(in); });
    t.check(min_max_flow(r, g).max_flow == prof.min_max(g),
            [&] { return "min_max_flow g=" + std::to_string(g) + " " + show(in); });
  }
  const std::int64_t top = prof.min_total(0);
  for (std::int64_t f = 0; f <= top; ++f) {
    auto o = prof.gaps_for_total(f);
    if (o) {
      t.check(min_gaps_total_flow(fi, f).gaps == *o,
              [&] { return "min_gaps_total_flow f=" + std::to_string(f) + " " + show(in); });
    }
  }
  for (std::int64_t f = 0; f <= prof.min_max(0); ++f) {
    auto o = prof.gaps_for_max(f);
    t.check(min_gaps_max_flow_count(r, f) == o,
            [&] { return "min_gaps_max_flow f=" + std::to_string(f) + " " + show(in); });
  }
}

Outcome criterion1() {
  Tally t;
  long feasible = 0, grid = 0;
  // Coarse grid: windows with r in {0,2,4,6}, d - r in {0,1,3,7}, capped at 7.
  std::vector<std::pair<Slot, Slot>> cells;
  for (Slot r : {0, 2, 4, 6}) {
    for (Slot len : {0, 1, 3, 7}) {
      std::pair<Slot, Slot> w{r, std::min<Slot>(r + len, 7)};
      if (std::find(cells.begin(), cells.end(), w) == cells.end()) cells.push_back(w);
    }
  }
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> multisets = [&](std::size_t from) {
    if (!pick.empty()) {
      std::vector<std::pair<Slot, Slot>> w;
      for (std::size_t i : pick) w.push_back(cells[i]);
      Instance in = make_instance(w);
      for (std::size_t i = 0; i < in.size(); ++i) in.jobs[i].weight = 1 + static_cast<Weight>((3 * i + pick[i]) % 4);
      compare_deadline(in, t, feasible);
      ++grid;
    }
    if (pick.size() == 5) return;
    for (std::size_t i = from; i < cells.size(); ++i) {
      pick.push_back(i);
      multisets(i);
      pick.pop_back();
    }
  };
  multisets(0);
  // Release-only grid: multisets of {0..7}.
  std::vector<Slot> rel;
  std::function<void(Slot)> releases = [&](Slot from) {
    if (!rel.empty()) {
      compare_flow(rel, t);
      ++grid;
    }
    if (rel.size() == 5) return;
    for (Slot r = from; r <= 7; ++r) {
      rel.push_back(r);
      releases(r);
      rel.pop_back();
    }
  };
  releases(0);

  Gen gen(20240601);
  const int randoms = scaled(10000, 500);
  for (int it = 0; it < randoms; ++it) {
    const auto n = static_cast<std::size_t>(gen.range(1, 8));
    const Slot horizon = gen.range(std::max<Slot>(static_cast<Slot>(n), 4), 16);
    Instance in = it % 2 ? gen.planted(n, horizon) : gen.windows(n, horizon);
    for (Job& j : in.jobs) j.weight = gen.range(1, 9);
    compare_deadline(in, t, feasible);
    compare_flow(gapsched::testing::releases_of(in), t);
  }
  std::ostringstream d;
  d << grid << " grid + " << randoms << " random instances (" << feasible << " feasible), " << t.summary();
  return {t.failures() == 0, d.str()};
}

Outcome criterion2() {
  Gen gen(7202);
  const int count = scaled(1000, 200);
  long bound_fail = 0, equal = 0, smaller = 0, single = 0;
  std::string example;
  for (int it = 0; it < count; ++it) {
    Instance in = gen.planted(static_cast<std::size_t>(gen.range(1, 12)), gen.range(12, 40));
    auto r = min_max_gap(in);
    const std::int64_t cap = std::max<std::int64_t>(r.lambda_star.ceil(), 1);
    if (Rational(r.max_separation) < r.lambda_star || r.max_separation > cap) ++bound_fail;
    if (r.max_separation == cap) {
      ++equal;
    } else {
      ++smaller;
      single += in.size() == 1;
      if (example.empty() && in.size() > 1) example = show(in) + " lambda*=" + r.lambda_star.str() + " sep=" + std::to_string(r.max_separation);
    }
  }
  std::ostringstream d;
  d << count << " feasible instances, bound failures " << bound_fail << ", equal to max(ceil(lambda*),1) "
    << equal << ", strictly smaller " << smaller << " (" << single << " of them single jobs with separation 0)";
  if (!example.empty()) d << " (e.g. " << example << ")";
  return {bound_fail == 0, d.str()};
}

Outcome criterion3() {
  Gen gen(7303);
  const int count = scaled(1000, 100);
  long pairs = 0, bad = 0;
  for (int it = 0; it < count; ++it) {
    const auto n = static_cast<std::size_t>(gen.range(2, 300));
    FlowInstance inst(gen.releases(n, static_cast<Slot>(4 * n), true));
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        ++pairs;
        bad += block_cost(inst, i, j) + block_cost(inst, i + 1, j + 1) >
               block_cost(inst, i, j + 1) + block_cost(inst, i + 1, j);
      }
    }
  }
  std::ostringstream d;
  d << count << " instances, " << pairs << " (i,j) pairs, " << bad << " violations";
  return {bad == 0, d.str()};
}

Outcome criterion4() {
  Tally t;
  Gen gen(7404);
  auto all_gammas = [&](std::size_t n) {
    FlowInstance inst(gen.releases(n, static_cast<Slot>(3 * n), gen.coin()));
    for (std::int64_t g = 0; g < static_cast<std::int64_t>(n); ++g) {
      const auto a = min_total_flow(inst, g, FlowEngine::naive).total_flow;
      const auto b = min_total_flow(inst, g, FlowEngine::monge).total_flow;
      t.check(a == b, [&] { return "n=" + std::to_string(n) + " g=" + std::to_string(g); });
    }
  };
  for (int it = 0; it < scaled(200, 30); ++it) all_gammas(static_cast<std::size_t>(gen.range(1, 60)));
  for (int it = 0; it < scaled(10, 2); ++it) all_gammas(static_cast<std::size_t>(gen.range(61, 200)));
  all_gammas(scaled(400, 120));

  // Speed: the naive engine gets 30x the accelerated time; if it runs out
  // the ratio is at least that budget over the accelerated time.
  const std::size_t n = scaled(100000, 20000);
  bench::BenchOptions o;
  o.suite = "min-total-flow";
  o.sizes = {n};
  o.repetitions = 1;
  o.gaps = 100;
  o.seed = 7;
  {
    FlowInstance inst([&] {
      Instance in = generate({Family::release_only, n, static_cast<Slot>(2 * n + 1), o.seed, false, false});
      return gapsched::testing::releases_of(in);
    }());
    auto t0 = Clock::now();
    (void)min_total_flow(inst, 100);
    o.naive_budget = std::chrono::milliseconds(static_cast<long>(30 * 1000 * seconds_since(t0)) + 1);
  }
  auto table = bench::run(o);
  const auto& naive = table.rows.at(0).cells.at(0);
  const auto& monge = table.rows.at(0).cells.at(1);
  const double floor_ms = naive.complete ? naive.ms : static_cast<double>(o.naive_budget.count());
  const double ratio = floor_ms / monge.ms;
  std::ostringstream d;
  d.setf(std::ios::fixed);
  d.precision(1);
  d << t.summary() << "; n=" << n << " g=100: accelerated " << monge.ms << " ms, naive "
    << (naive.complete ? "" : "timed out at ") << floor_ms << " ms";
  if (!naive.complete) d << " (extrapolated " << naive.ms << " ms, ratio ~" << naive.ms / monge.ms << ")";
  d << ", ratio " << (naive.complete ? "" : ">= ") << ratio << " (need >= 20)";
  return {t.failures() == 0 && ratio >= 20.0, d.str()};
}

Outcome criterion5() {
  auto median_ms = [](std::size_t n) {
    bench::BenchOptions o;
    o.suite = "min-gaps-maxflow";
    o.sizes = {n};
    o.repetitions = 7;
    o.seed = 11;
    return bench::run(o).rows.at(0).cells.at(0).ms;
  };
  const double t1 = median_ms(250000), t2 = median_ms(500000), t4 = median_ms(1000000);
  const double r1 = t2 / t1, r2 = t4 / t2;
  std::ostringstream d;
  d.setf(std::ios::fixed);
  d.precision(2);
  d << "n=2.5e5 " << t1 << " ms, 5e5 " << t2 << " ms, 1e6 " << t4 << " ms; doubling ratios " << r1 << ", " << r2
    << " (need 1e6 < 2000 ms, ratios <= 2.4)";
  return {t4 < 2000.0 && r1 <= 2.4 && r2 <= 2.4, d.str()};
}

Outcome criterion6() {
  Tally t;
  Gen gen(7606);
  for (int it = 0; it < 200; ++it) {
    auto x = gen.sorted_vector(static_cast<std::size_t>(gen.range(1, 60)), -500, 500);
    auto y = gen.sorted_vector(static_cast<std::size_t>(gen.range(1, 60)), -500, 500);
    std::vector<std::int64_t> s;
    for (auto a : x) {
      for (auto b : y) s.push_back(a + b);
    }
    std::sort(s.begin(), s.end());
    for (std::size_t k = 1; k <= s.size(); ++k) {
      t.check(select_kth(x, y, static_cast<std::int64_t>(k)) == s[k - 1], [&] { return "k=" + std::to_string(k); });
    }
  }
  const long selects = t.checks();
  for (int it = 0; it < scaled(500, 100); ++it) {
    auto r = gen.releases(static_cast<std::size_t>(gen.range(1, 40)), gen.range(1, 80));
    const std::int64_t g = gen.range(0, 6);
    const std::int64_t f = min_max_flow(r, g).max_flow;
    auto [x, y] = max_flow_candidate_axes(r);
    std::vector<std::int64_t> phi;
    for (auto a : x) {
      for (auto b : y) phi.push_back(a + b);
    }
    std::sort(phi.begin(), phi.end());
    phi.erase(std::unique(phi.begin(), phi.end()), phi.end());
    auto at = std::lower_bound(phi.begin(), phi.end(), f);
    t.check(at != phi.end() && *at == f, [&] { return "f* not in Phi"; });
    auto c = min_gaps_max_flow_count(r, f);
    t.check(c && *c <= g, [&] { return "oracle(f*) > gamma"; });
    if (at != phi.begin()) {
      auto below = min_gaps_max_flow_count(r, *(at - 1));
      t.check(!below || *below > g, [&] { return "predecessor passes"; });
    }
  }
  std::ostringstream d;
  d << selects << " select_kth ranks on 200 pairs; " << t.summary();
  return {t.failures() == 0, d.str()};
}

Outcome criterion7() {
  Tally t;
  Gen gen(7707);
  for (int it = 0; it < 500; ++it) {
    auto iv = gen.intervals(static_cast<std::size_t>(gen.range(1, 12)), 30);
    const Rational a = min_max_gap_cont(iv).lambda, b = min_max_gap_cont_reference(iv).lambda;
    t.check(a == b, [&] { return "staged " + a.str() + " vs reference " + b.str(); });
  }
  return {t.failures() == 0, "500 interval sets, " + t.summary()};
}

Outcome criterion8() {
  auto timed = [](const std::function<void()>& f) {
    auto t0 = Clock::now();
    f();
    return seconds_since(t0);
  };
  const std::size_t n1 = scaled(100, 40), n2 = scaled(40, 20), n3 = scaled(18, 10);
  Instance a = generate({Family::uniform_windows, n1, static_cast<Slot>(2 * n1), 3, true, false});
  Instance b = generate({Family::uniform_windows, n2, static_cast<Slot>(4 * n2), 3, true, false});
  Instance c = generate({Family::uniform_windows, n3, static_cast<Slot>(2 * n3), 3, false, false});
  std::int64_t ga = 0, gb = 0, vc = 0;
  const double ta = timed([&] { ga = min_gaps(a).gaps; });
  const double tb = timed([&] { gb = max_gaps(b).gaps; });
  const double tc = timed([&] { vc = max_throughput(c, 3).value; });
  std::ostringstream d;
  d.setf(std::ios::fixed);
  d.precision(2);
  d << "min_gaps n=" << n1 << " " << ta << " s (value " << ga << ", limit 60); max_gaps n=" << n2 << " " << tb
    << " s (value " << gb << ", limit 60); max_throughput n=" << n3 << " g=3 " << tc << " s (value " << vc
    << ", limit 120)";
  return {ta < 60 && tb < 60 && tc < 120, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"1 oracle equivalence", criterion1},     {"2 continuous/discrete bridge", criterion2},
      {"3 quadrangle inequality", criterion3},  {"4 Monge engine equivalence and speedup", criterion4},
      {"5 linear-time max-flow gaps", criterion5}, {"6 X+Y selection", criterion6},
      {"7 staged gap search", criterion7},      {"8 complexity smoke limits", criterion8},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
