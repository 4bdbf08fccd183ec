#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gapsched/core.hpp"
#include "gapsched/hitting.hpp"
#include "gapsched/rational.hpp"

namespace gapsched {

class FormatError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// {"jobs": [...]}, {"intervals": [...]} or {"points": [...]}.
struct InstanceFile {
  enum class Kind { jobs, intervals, points };
  Kind kind = Kind::jobs;
  Instance instance;  // jobs, or points as release-only jobs
  std::vector<Interval> intervals;
};

InstanceFile parse_instance(const std::string& text);
InstanceFile load_instance(const std::string& path);
std::string dump_instance(const Instance& instance);

using ReportValue = std::variant<std::monostate, std::int64_t, Rational>;

struct SolveReport {
  bool feasible = true;
  std::string objective;
  ReportValue value;
  // Discrete witness (with the instance it refers to) or continuous one.
  std::optional<Schedule> schedule;
  const Instance* instance = nullptr;
  std::optional<HittingSet> hitting;
  const std::vector<Interval>* intervals = nullptr;
  std::optional<std::vector<Slot>> points;  // release-only continuous witness
  std::optional<GapStats> stats;
  std::string solver = "fast";
  std::int64_t elapsed_ms = 0;
  // Infeasibility witness.
  std::optional<Window> hall_window;
  std::optional<std::string> blocking_job;
  std::string message;
};

std::string report_json(const SolveReport& report);
std::string report_text(const SolveReport& report);

}  // namespace gapsched
