#include "bench.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gapsched/gapsched.hpp"

namespace gapsched::bench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

BenchCell timed(int reps, const std::function<void()>& body) {
  std::vector<double> ms;
  for (int i = 0; i < std::max(reps, 1); ++i) {
    auto t0 = Clock::now();
    body();
    ms.push_back(elapsed_ms(t0));
  }
  return {median(std::move(ms)), true};
}

std::vector<Slot> sorted_releases(std::size_t n, std::uint64_t seed) {
  Instance inst = generate({Family::release_only, n, static_cast<Slot>(2 * n + 1), seed, false, false});
  std::vector<Slot> r;
  r.reserve(n);
  for (const Job& j : inst.jobs) r.push_back(j.release);
  std::sort(r.begin(), r.end());
  return r;
}

Instance windows(std::size_t n, std::uint64_t seed) {
  return generate({Family::uniform_windows, n, static_cast<Slot>(2 * n + 2), seed, true, false});
}

volatile std::int64_t sink = 0;

BenchRow total_flow_row(const BenchOptions& o, std::size_t n) {
  FlowInstance inst(sorted_releases(n, o.seed));
  const std::int64_t g = std::min<std::int64_t>(o.gaps, static_cast<std::int64_t>(n) - 1);
  BenchCell monge = timed(o.repetitions, [&] { sink = min_total_flow(inst, g).total_flow; });
  std::vector<double> ms;
  BenchCell naive;
  for (int i = 0; i < std::max(o.repetitions, 1); ++i) {
    auto t0 = Clock::now();
    TimedFlowRun run = min_total_flow_naive_timed(inst, g, o.naive_budget);
    const double spent = elapsed_ms(t0);
    if (!run.result) {
      // One timed-out run is enough: report the linear extrapolation.
      naive = {run.progress > 0 ? spent / run.progress : spent, false};
      break;
    }
    sink = run.result->total_flow;
    ms.push_back(spent);
  }
  if (naive.complete) naive.ms = median(std::move(ms));
  return {n, {naive, monge}};
}

struct Suite {
  const char* name;
  std::vector<std::string> columns;
  std::function<BenchRow(const BenchOptions&, std::size_t)> row;
};

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> s{
      {"min-total-flow", {"naive_ms", "monge_ms"}, total_flow_row},
      {"min-gaps-maxflow", {"fast_ms"},
       [](const BenchOptions& o, std::size_t n) {
         auto r = sorted_releases(n, o.seed);
         // Bound: two above the least feasible one, that of the left-packed schedule.
         std::int64_t f = 0;
         Slot t = std::numeric_limits<Slot>::min();
         for (Slot x : r) {
           t = std::max(x, t + 1);
           f = std::max(f, t - x);
         }
         return BenchRow{n, {timed(o.repetitions, [&] { sink = min_gaps_max_flow(r, f + 2).gaps; })}};
       }},
      {"min-max-flow", {"fast_ms"},
       [](const BenchOptions& o, std::size_t n) {
         auto r = sorted_releases(n, o.seed);
         return BenchRow{n, {timed(o.repetitions, [&] { sink = min_max_flow(r, o.gaps).max_flow; })}};
       }},
      {"min-gaps", {"fast_ms"},
       [](const BenchOptions& o, std::size_t n) {
         Instance inst = windows(n, o.seed);
         return BenchRow{n, {timed(o.repetitions, [&] { sink = min_gaps(inst).gaps; })}};
       }},
      {"max-gaps", {"fast_ms"},
       [](const BenchOptions& o, std::size_t n) {
         Instance inst = windows(n, o.seed);
         return BenchRow{n, {timed(o.repetitions, [&] { sink = max_gaps(inst).gaps; })}};
       }},
      {"min-max-gap", {"fast_ms"},
       [](const BenchOptions& o, std::size_t n) {
         Instance inst = windows(n, o.seed);
         return BenchRow{n, {timed(o.repetitions, [&] { sink = min_max_gap(inst).max_separation; })}};
       }},
      {"max-throughput", {"fast_ms"},
       [](const BenchOptions& o, std::size_t n) {
         Instance inst = generate({Family::uniform_windows, n, static_cast<Slot>(2 * n + 2), o.seed, false, false});
         return BenchRow{n, {timed(o.repetitions, [&] { sink = max_throughput(inst, o.gaps).value; })}};
       }},
  };
  return s;
}

}  // namespace

std::vector<std::string> suites() {
  std::vector<std::string> out;
  for (const Suite& s : all_suites()) out.push_back(s.name);
  return out;
}

BenchTable run(const BenchOptions& options) {
  auto it = std::find_if(all_suites().begin(), all_suites().end(),
                         [&](const Suite& s) { return options.suite == s.name; });
  if (it == all_suites().end()) throw std::invalid_argument("unknown bench suite: " + options.suite);
  BenchTable table{options.suite, it->columns, {}};
  for (std::size_t n : options.sizes) table.rows.push_back(it->row(options, n));
  return table;
}

std::string to_csv(const BenchTable& table) {
  std::ostringstream out;
  out << "suite,n";
  for (const std::string& c : table.columns) out << "," << c << "," << c.substr(0, c.size() - 3) << "_complete";
  out << "\n";
  out.setf(std::ios::fixed);
  out.precision(3);
  for (const BenchRow& row : table.rows) {
    out << table.suite << "," << row.n;
    for (const BenchCell& c : row.cells) out << "," << c.ms << "," << (c.complete ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

}  // namespace gapsched::bench
