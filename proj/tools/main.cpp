#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bench.hpp"
#include "gapsched/gapsched.hpp"
#include "gapsched/io.hpp"

using namespace gapsched;

namespace {

constexpr int kOk = 0, kUsage = 1, kInfeasible = 2;

struct Flags {
  bool continuous = false, oracle = false, json = false, weighted = false;
  std::uint64_t seed = 1;
  std::string input;
  std::optional<std::int64_t> gaps, min, total_flow, max_flow;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::int64_t need(const std::optional<std::int64_t>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

std::vector<Slot> releases_of(const Instance& inst) {
  std::vector<Slot> r;
  for (const Job& j : inst.jobs) r.push_back(j.release);
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<std::int64_t> weights_of(const Instance& inst) {
  std::vector<std::int64_t> w;
  for (const Job& j : inst.jobs) w.push_back(j.weight);
  return w;
}

void require_deadlines(const InstanceFile& f, const std::string& command) {
  if (f.kind != InstanceFile::Kind::jobs || !f.instance.has_deadlines()) {
    throw UsageError(command + " needs jobs with deadlines");
  }
}

void fill_stats(SolveReport& rep, const Instance& inst) {
  rep.stats = gap_stats(*rep.schedule, inst);
}

// Fast discrete solvers.
void solve_discrete(const std::string& cmd, const Flags& fl, const InstanceFile& file, SolveReport& rep) {
  const Instance& inst = file.instance;
  auto witness = [&](Schedule s) {
    rep.schedule = std::move(s);
    rep.instance = &inst;
    fill_stats(rep, inst);
  };
  if (cmd == "feasible") {
    require_deadlines(file, cmd);
    FeasibilityResult f = check_feasible(inst);
    if (!f.feasible) throw InfeasibleError("instance is infeasible", f.hall_window);
    rep.value = static_cast<std::int64_t>(inst.size());
    witness(std::move(f.schedule));
  } else if (cmd == "min-gaps") {
    require_deadlines(file, cmd);
    auto r = min_gaps(inst);
    rep.value = r.gaps;
    witness(std::move(r.schedule));
  } else if (cmd == "max-gaps") {
    require_deadlines(file, cmd);
    auto r = max_gaps(inst);
    rep.value = r.gaps;
    witness(std::move(r.schedule));
  } else if (cmd == "min-max-gap") {
    require_deadlines(file, cmd);
    auto r = min_max_gap(inst);
    rep.value = r.max_separation;
    witness(std::move(r.schedule));
  } else if (cmd == "max-throughput") {
    require_deadlines(file, cmd);
    auto r = max_throughput(inst, need(fl.gaps, "--gaps"), fl.weighted);
    rep.value = r.value;
    witness(std::move(r.schedule));
  } else if (cmd == "min-gaps-throughput") {
    require_deadlines(file, cmd);
    auto r = min_gaps_for_throughput(inst, need(fl.min, "--min"), fl.weighted);
    rep.value = r.gaps;
    witness(std::move(r.schedule));
  } else if (cmd == "min-total-flow") {
    auto r = solve_min_total_flow(inst, need(fl.gaps, "--gaps"));
    rep.value = r.value;
    witness(std::move(r.schedule));
  } else if (cmd == "min-gaps-flow") {
    auto r = solve_min_gaps_total_flow(inst, need(fl.total_flow, "--total-flow"));
    rep.value = r.value;
    witness(std::move(r.schedule));
  } else if (cmd == "min-gaps-maxflow") {
    auto r = solve_min_gaps_max_flow(inst, need(fl.max_flow, "--max-flow"));
    rep.value = r.value;
    witness(std::move(r.schedule));
  } else if (cmd == "min-max-flow") {
    auto r = solve_min_max_flow(inst, need(fl.gaps, "--gaps"));
    rep.value = r.value;
    witness(std::move(r.schedule));
  }
}

// Continuous analogues: k points have k-1 gaps, so a gap budget G allows
// G+1 points and reported gap counts are point counts minus one.
void solve_continuous(const std::string& cmd, const Flags& fl, const InstanceFile& file,
                      std::vector<Interval>& intervals, SolveReport& rep) {
  const bool flow = cmd == "min-total-flow" || cmd == "min-gaps-flow" || cmd == "min-gaps-maxflow" ||
                    cmd == "min-max-flow";
  if (flow) {
    if (file.kind == InstanceFile::Kind::intervals) throw UsageError(cmd + " needs points or jobs");
    std::vector<Slot> r = releases_of(file.instance);
    if (cmd == "min-total-flow") {
      auto res = min_total_flow_cont(r, need(fl.gaps, "--gaps") + 1);
      rep.value = res.value;
      rep.points = res.points;
    } else if (cmd == "min-gaps-flow") {
      const std::int64_t f = need(fl.total_flow, "--total-flow");
      rep.value = r.empty() ? 0 : min_points_total_flow_cont(r, f) - 1;
    } else if (cmd == "min-gaps-maxflow") {
      auto pts = min_points_flow_bound(r, need(fl.max_flow, "--max-flow"));
      rep.value = pts.empty() ? 0 : static_cast<std::int64_t>(pts.size()) - 1;
      rep.points = pts;
    } else {
      auto res = min_max_flow_cont(r, need(fl.gaps, "--gaps") + 1);
      rep.value = res.value;
      rep.points = res.points;
    }
    return;
  }
  if (file.kind == InstanceFile::Kind::intervals) {
    intervals = file.intervals;
  } else {
    require_deadlines(file, cmd);
    intervals = intervals_of(file.instance);
  }
  rep.intervals = &intervals;
  const std::vector<std::int64_t> w =
      fl.weighted && file.kind == InstanceFile::Kind::jobs ? weights_of(file.instance) : std::vector<std::int64_t>{};
  if (cmd == "feasible") {
    auto h = greedy_min_hitting(intervals);
    rep.value = static_cast<std::int64_t>(intervals.size());
    rep.hitting = std::move(h);
  } else if (cmd == "min-gaps") {
    auto h = greedy_min_hitting(intervals);
    rep.value = h.size() == 0 ? 0 : static_cast<std::int64_t>(h.size()) - 1;
    rep.hitting = std::move(h);
  } else if (cmd == "min-max-gap") {
    if (intervals.empty()) throw UsageError("min-max-gap needs at least one interval");
    auto r = min_max_gap_cont(intervals);
    rep.value = r.lambda;
    rep.hitting = std::move(r.hitting);
  } else if (cmd == "max-throughput") {
    auto r = max_hit_budget(intervals, need(fl.gaps, "--gaps") + 1, w);
    rep.value = r.value;
    rep.hitting = std::move(r.hitting);
  } else if (cmd == "min-gaps-throughput") {
    auto r = min_hit_with_throughput(intervals, need(fl.min, "--min"), w);
    rep.value = r.points == 0 ? 0 : r.points - 1;
    rep.hitting = std::move(r.hitting);
  } else {
    throw UsageError(cmd + " has no continuous form");
  }
}

std::optional<Objective> objective_of(const std::string& cmd) {
  if (cmd == "min-gaps") return Objective::min_gaps;
  if (cmd == "max-gaps") return Objective::max_gaps;
  if (cmd == "min-max-gap") return Objective::min_max_gap;
  if (cmd == "max-throughput") return Objective::max_throughput;
  if (cmd == "min-gaps-throughput") return Objective::min_gaps_throughput;
  if (cmd == "min-total-flow") return Objective::min_total_flow;
  if (cmd == "min-gaps-flow") return Objective::min_gaps_total_flow;
  if (cmd == "min-gaps-maxflow") return Objective::min_gaps_max_flow;
  if (cmd == "min-max-flow") return Objective::min_max_flow;
  return std::nullopt;
}

void solve_oracle(const std::string& cmd, const Flags& fl, const InstanceFile& file, SolveReport& rep) {
  if (file.kind == InstanceFile::Kind::intervals) throw UsageError("--oracle needs a discrete instance");
  const Instance& inst = file.instance;
  rep.solver = "oracle";
  OracleQuery q;
  q.weighted = fl.weighted;
  if (cmd == "feasible") {
    require_deadlines(file, cmd);
    q.objective = Objective::min_gaps;
  } else {
    q.objective = *objective_of(cmd);
    switch (q.objective) {
      case Objective::max_throughput:
      case Objective::min_total_flow:
      case Objective::min_max_flow: q.parameter = need(fl.gaps, "--gaps"); break;
      case Objective::min_gaps_throughput: q.parameter = need(fl.min, "--min"); break;
      case Objective::min_gaps_total_flow: q.parameter = need(fl.total_flow, "--total-flow"); break;
      case Objective::min_gaps_max_flow: q.parameter = need(fl.max_flow, "--max-flow"); break;
      default: require_deadlines(file, cmd);
    }
  }
  OracleResult r = oracle_solve(inst, q);
  if (!r.value) throw InfeasibleError("no schedule satisfies the request");
  rep.value = cmd == "feasible" ? static_cast<std::int64_t>(inst.size()) : *r.value;
  rep.schedule = std::move(r.schedule);
  rep.instance = &inst;
  fill_stats(rep, inst);
}

std::string read_all(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_solve(const std::string& cmd, const Flags& fl) {
  if (fl.continuous && fl.oracle) throw UsageError("--continuous and --oracle are exclusive");
  InstanceFile file = fl.input == "-" ? parse_instance(read_all(std::cin)) : load_instance(fl.input);
  if (file.kind == InstanceFile::Kind::intervals && !fl.continuous) {
    throw UsageError("interval files need --continuous");
  }
  SolveReport rep;
  rep.objective = cmd;
  std::vector<Interval> intervals;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (fl.oracle) {
      solve_oracle(cmd, fl, file, rep);
    } else if (fl.continuous) {
      solve_continuous(cmd, fl, file, intervals, rep);
    } else {
      solve_discrete(cmd, fl, file, rep);
    }
  } catch (const InfeasibleError& e) {
    rep.feasible = false;
    rep.message = e.what();
    rep.hall_window = e.window();
    if (e.job()) {
      const auto& jobs = file.instance.jobs;
      rep.blocking_job = *e.job() < jobs.size() ? jobs[*e.job()].id : std::to_string(*e.job());
    }
  }
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  std::cout << (fl.json ? report_json(rep) : report_text(rep));
  return rep.feasible ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap-aware scheduling of unit jobs"};
  app.require_subcommand(1);
  Flags fl;
  app.add_flag("--continuous", fl.continuous, "Solve the interval-hitting analogue");
  app.add_flag("--oracle", fl.oracle, "Use the exhaustive oracle");
  app.add_flag("--json", fl.json, "Print the report as JSON");
  app.add_option("--seed", fl.seed, "Random seed (generate, bench)");

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"feasible", "Check that every job can be scheduled"},
      {"min-gaps", "Fewest gaps"},
      {"max-gaps", "Most gaps"},
      {"min-max-gap", "Smallest maximum separation"},
      {"max-throughput", "Most jobs within a gap budget"},
      {"min-gaps-throughput", "Fewest gaps reaching a throughput"},
      {"min-total-flow", "Least total flow within a gap budget"},
      {"min-gaps-flow", "Fewest gaps within a total-flow bound"},
      {"min-gaps-maxflow", "Fewest gaps within a max-flow bound"},
      {"min-max-flow", "Least max flow within a gap budget"},
  };
  std::vector<CLI::App*> solve_cmds;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    sub->add_option("input", fl.input, "Instance file, - for stdin")->required();
    const std::string name = c.name;
    if (name == "max-throughput" || name == "min-total-flow" || name == "min-max-flow") {
      sub->add_option("--gaps", fl.gaps, "Gap budget");
    }
    if (name == "max-throughput" || name == "min-gaps-throughput") {
      sub->add_flag("--weighted", fl.weighted, "Count job weights");
    }
    if (name == "min-gaps-throughput") sub->add_option("--min", fl.min, "Throughput floor");
    if (name == "min-gaps-flow") sub->add_option("--total-flow", fl.total_flow, "Total-flow bound");
    if (name == "min-gaps-maxflow") sub->add_option("--max-flow", fl.max_flow, "Max-flow bound");
    solve_cmds.push_back(sub);
  }

  CLI::App* gen = app.add_subcommand("generate", "Write a random instance");
  gen->fallthrough();
  std::string family_name, out_path;
  GenerateOptions gopt;
  gen->add_option("--family", family_name, "uniform-windows, tight-sprinkle, agreeable, release-only or clustered")
      ->required();
  gen->add_option("--n", gopt.n, "Job count")->required();
  gen->add_option("--horizon", gopt.horizon, "Slots drawn from [0, horizon)")->required();
  gen->add_flag("--feasible", gopt.feasible, "Plant a schedule so the instance is feasible");
  gen->add_flag("--weighted", gopt.weighted, "Random weights in 1..9");
  gen->add_option("-o,--output", out_path, "Output file (default stdout)");

  CLI::App* bench_cmd = app.add_subcommand("bench", "Median timings as CSV");
  bench_cmd->fallthrough();
  bench::BenchOptions bopt;
  std::string sizes;
  std::int64_t naive_budget_ms = 60000;
  bench_cmd->add_option("--suite", bopt.suite, "Solver suite")->required();
  bench_cmd->add_option("--sizes", sizes, "Comma-separated instance sizes")->expected(0, 1);
  bench_cmd->add_option("--reps", bopt.repetitions, "Repetitions per size");
  bench_cmd->add_option("--gaps", bopt.gaps, "Gap budget for budgeted suites");
  bench_cmd->add_option("--naive-budget-ms", naive_budget_ms, "Time limit for the naive engine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    for (CLI::App* sub : solve_cmds) {
      if (sub->parsed()) return run_solve(sub->get_name(), fl);
    }
    if (gen->parsed()) {
      auto family = parse_family(family_name);
      if (!family) throw UsageError("invalid family: " + family_name);
      gopt.family = *family;
      gopt.seed = fl.seed;
      const std::string text = dump_instance(generate(gopt));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw UsageError("cannot write " + out_path);
        out << text;
      }
      return kOk;
    }
    if (bench_cmd->parsed()) {
      std::stringstream ss(sizes);
      for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        if (item.find_first_not_of("0123456789") != std::string::npos) throw UsageError("bad size: " + item);
        bopt.sizes.push_back(std::stoull(item));
      }
      bopt.seed = fl.seed;
      bopt.naive_budget = std::chrono::milliseconds(naive_budget_ms);
      std::cout << bench::to_csv(bench::run(bopt));
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
