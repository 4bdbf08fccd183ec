#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gapsched/gapsched.hpp"

namespace py = pybind11;
using namespace gapsched;

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(q.num(), q.den());
}

Rational from_python(const py::handle& x) {
  if (py::isinstance<py::int_>(x)) return Rational(x.cast<std::int64_t>());
  return Rational(x.attr("numerator").cast<std::int64_t>(), x.attr("denominator").cast<std::int64_t>());
}

py::list slots(const Schedule& s) {
  py::list out;
  for (const auto& x : s.slots()) {
    if (x) {
      out.append(*x);
    } else {
      out.append(py::none());
    }
  }
  return out;
}

py::dict stats_dict(const GapStats& s) {
  py::dict d;
  d["gap_count"] = s.gap_count;
  d["max_idle"] = s.max_idle;
  d["max_separation"] = s.max_separation;
  d["total_flow"] = s.total_flow;
  d["max_flow"] = s.max_flow;
  return d;
}

py::tuple value_and_slots(std::int64_t v, const Schedule& s) { return py::make_tuple(v, slots(s)); }

py::tuple points_of(const HittingSet& h) {
  py::list reps, pts;
  for (const auto& r : h.representative) {
    if (r) {
      reps.append(fraction(*r));
    } else {
      reps.append(py::none());
    }
  }
  for (const Rational& p : h.points) pts.append(fraction(p));
  return py::make_tuple(reps, pts);
}

}  // namespace

PYBIND11_MODULE(_gapsched, m) {
  m.doc() = "Exact gap-aware scheduling of unit jobs";

  auto& error = py::register_exception<Error>(m, "Error");
  py::register_exception<InfeasibleError>(m, "InfeasibleError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Job>(m, "Job")
      .def(py::init([](std::string id, Slot release, std::optional<Slot> deadline, Weight weight) {
             return Job{std::move(id), release, deadline, weight};
           }),
           py::arg("id"), py::arg("release"), py::arg("deadline") = py::none(), py::arg("weight") = 1)
      .def_readwrite("id", &Job::id)
      .def_readwrite("release", &Job::release)
      .def_readwrite("deadline", &Job::deadline)
      .def_readwrite("weight", &Job::weight)
      .def("__repr__", [](const Job& j) {
        return "Job(" + j.id + ", " + std::to_string(j.release) + ", " +
               (j.deadline ? std::to_string(*j.deadline) : "None") + ", " + std::to_string(j.weight) + ")";
      });

  py::class_<Instance>(m, "Instance")
      .def(py::init([](std::vector<Job> jobs) { return Instance{std::move(jobs)}; }), py::arg("jobs"))
      .def_static("from_windows", &make_instance, py::arg("windows"))
      .def_static("from_releases", &make_release_instance, py::arg("releases"))
      .def_readwrite("jobs", &Instance::jobs)
      .def("__len__", &Instance::size);

  m.def("check_feasible", [](const Instance& in) {
    auto f = check_feasible(in);
    py::object window = py::none();
    if (f.hall_window) window = py::make_tuple(f.hall_window->first, f.hall_window->last);
    return py::make_tuple(f.feasible, f.feasible ? py::object(slots(f.schedule)) : py::none(), window);
  }, py::arg("instance"), "(feasible, slots or None, Hall window or None)");

  m.def("gap_stats", [](const Instance& in, const std::vector<std::optional<Slot>>& s) {
    Schedule sch(in.size());
    for (std::size_t j = 0; j < s.size() && j < in.size(); ++j) {
      if (s[j]) sch.assign(j, *s[j]);
    }
    return stats_dict(gap_stats(sch, in));
  }, py::arg("instance"), py::arg("slots"));

  m.def("min_gaps", [](const Instance& in) {
    auto r = min_gaps(in);
    return value_and_slots(r.gaps, r.schedule);
  }, py::arg("instance"));
  m.def("max_gaps", [](const Instance& in) {
    auto r = max_gaps(in);
    return value_and_slots(r.gaps, r.schedule);
  }, py::arg("instance"));
  m.def("min_max_gap", [](const Instance& in) {
    auto r = min_max_gap(in);
    return py::make_tuple(r.max_separation, slots(r.schedule), fraction(r.lambda_star));
  }, py::arg("instance"), "(max separation, slots, continuous optimum)");
  m.def("max_throughput", [](const Instance& in, std::int64_t gaps, bool weighted) {
    auto r = max_throughput(in, gaps, weighted);
    return value_and_slots(r.value, r.schedule);
  }, py::arg("instance"), py::arg("gaps"), py::arg("weighted") = false);
  m.def("min_gaps_for_throughput", [](const Instance& in, std::int64_t m, bool weighted) {
    auto r = min_gaps_for_throughput(in, m, weighted);
    return value_and_slots(r.gaps, r.schedule);
  }, py::arg("instance"), py::arg("m"), py::arg("weighted") = false);

  m.def("min_total_flow", [](const Instance& in, std::int64_t gaps, bool naive) {
    auto r = solve_min_total_flow(in, gaps, naive ? FlowEngine::naive : FlowEngine::monge);
    return value_and_slots(r.value, r.schedule);
  }, py::arg("instance"), py::arg("gaps"), py::arg("naive") = false);
  m.def("min_gaps_total_flow", [](const Instance& in, std::int64_t f) {
    auto r = solve_min_gaps_total_flow(in, f);
    return value_and_slots(r.value, r.schedule);
  }, py::arg("instance"), py::arg("total_flow"));
  m.def("min_gaps_max_flow", [](const Instance& in, std::int64_t f) {
    auto r = solve_min_gaps_max_flow(in, f);
    return value_and_slots(r.value, r.schedule);
  }, py::arg("instance"), py::arg("max_flow"));
  m.def("min_max_flow", [](const Instance& in, std::int64_t gaps) {
    auto r = solve_min_max_flow(in, gaps);
    return value_and_slots(r.value, r.schedule);
  }, py::arg("instance"), py::arg("gaps"));

  m.def("block_cost", [](std::vector<Slot> releases, std::size_t i, std::size_t j) {
    return block_cost(FlowInstance(std::move(releases)), i, j);
  }, py::arg("releases"), py::arg("i"), py::arg("j"));
  m.def("select_kth", [](std::vector<std::int64_t> x, std::vector<std::int64_t> y, std::int64_t k) {
    return select_kth(x, y, k);
  }, py::arg("x"), py::arg("y"), py::arg("k"));

  m.def("min_max_gap_cont", [](const std::vector<std::pair<Slot, Slot>>& spans) {
    auto r = min_max_gap_cont(make_intervals(spans));
    return py::make_tuple(fraction(r.lambda), py::object(points_of(r.hitting)[0]));
  }, py::arg("intervals"), "(optimum as Fraction, representatives)");
  m.def("viable", [](const std::vector<std::pair<Slot, Slot>>& spans, py::handle lambda) {
    return viable(make_intervals(spans), from_python(lambda)).viable;
  }, py::arg("intervals"), py::arg("lam"));
  m.def("greedy_min_hitting", [](const std::vector<std::pair<Slot, Slot>>& spans) {
    return py::object(points_of(greedy_min_hitting(make_intervals(spans)))[1]);
  }, py::arg("intervals"));

  py::enum_<Objective>(m, "Objective")
      .value("min_gaps", Objective::min_gaps)
      .value("max_gaps", Objective::max_gaps)
      .value("min_max_gap", Objective::min_max_gap)
      .value("max_throughput", Objective::max_throughput)
      .value("min_gaps_throughput", Objective::min_gaps_throughput)
      .value("min_total_flow", Objective::min_total_flow)
      .value("min_gaps_total_flow", Objective::min_gaps_total_flow)
      .value("min_gaps_max_flow", Objective::min_gaps_max_flow)
      .value("min_max_flow", Objective::min_max_flow);

  m.def("oracle", [](const Instance& in, Objective o, std::int64_t parameter, bool weighted, std::size_t max_jobs,
                     std::int64_t max_universe) {
    auto r = oracle_solve(in, {o, parameter, weighted}, {max_jobs, max_universe});
    return py::make_tuple(r.value ? py::object(py::int_(*r.value)) : py::none(), slots(r.schedule));
  }, py::arg("instance"), py::arg("objective"), py::arg("parameter") = 0, py::arg("weighted") = false,
        py::arg("max_jobs") = 8, py::arg("max_universe") = 16, "(value or None, slots)");

  m.def("generate", [](const std::string& family, std::size_t n, Slot horizon, std::uint64_t seed, bool feasible,
                       bool weighted) {
    auto f = parse_family(family);
    if (!f) throw InvalidArgument("invalid family: " + family);
    return generate({*f, n, horizon, seed, feasible, weighted});
  }, py::arg("family"), py::arg("n"), py::arg("horizon"), py::arg("seed") = 0, py::arg("feasible") = false,
        py::arg("weighted") = false);
}
