#include "gapsched/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gapsched {

namespace {

using json = nlohmann::ordered_json;

constexpr std::int64_t kCoordLimit = std::int64_t{1} << 40;

std::int64_t coord(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw FormatError(where + ": missing \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw FormatError(where + ": \"" + key + "\" must be an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(kCoordLimit)) {
    throw FormatError(where + ": \"" + key + "\" exceeds 2^40");
  }
  auto x = v.get<std::int64_t>();
  if (x > kCoordLimit || x < -kCoordLimit) throw FormatError(where + ": \"" + key + "\" exceeds 2^40");
  return x;
}

std::string id_of(const json& obj, std::size_t i, const char* prefix) {
  if (!obj.contains("id")) return prefix + std::to_string(i);
  const json& v = obj.at("id");
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw FormatError("entry " + std::to_string(i) + ": \"id\" must be a string or integer");
}

const json& array_field(const json& doc, const char* key) {
  const json& a = doc.at(key);
  if (!a.is_array()) throw FormatError(std::string("\"") + key + "\" must be an array");
  return a;
}

void unique_ids(const std::vector<std::string>& ids) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw FormatError("duplicate id \"" + id + "\"");
  }
}

json value_json(const ReportValue& v) {
  if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
  if (std::holds_alternative<Rational>(v)) {
    const Rational& q = std::get<Rational>(v);
    if (q.is_integer()) return q.num();
    return q.str();
  }
  return nullptr;
}

std::string value_text(const ReportValue& v) {
  if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
  if (std::holds_alternative<Rational>(v)) return std::get<Rational>(v).str();
  return "-";
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("instance file must be a JSON object");
  InstanceFile f;
  std::vector<std::string> ids;
  try {
    if (doc.contains("jobs")) {
      f.kind = InstanceFile::Kind::jobs;
      const json& jobs = array_field(doc, "jobs");
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        const json& o = jobs[i];
        const std::string where = "job " + std::to_string(i);
        if (!o.is_object()) throw FormatError(where + " must be an object");
        Job j;
        j.id = id_of(o, i, "j");
        j.release = coord(o, "release", where);
        if (o.contains("deadline") && !o.at("deadline").is_null()) j.deadline = coord(o, "deadline", where);
        if (o.contains("weight")) {
          j.weight = coord(o, "weight", where);
          if (j.weight < 0) throw FormatError(where + ": weight must be non-negative");
        }
        ids.push_back(j.id);
        f.instance.jobs.push_back(std::move(j));
      }
    } else if (doc.contains("intervals")) {
      f.kind = InstanceFile::Kind::intervals;
      const json& iv = array_field(doc, "intervals");
      for (std::size_t i = 0; i < iv.size(); ++i) {
        const json& o = iv[i];
        const std::string where = "interval " + std::to_string(i);
        if (!o.is_object()) throw FormatError(where + " must be an object");
        Interval x{id_of(o, i, "i"), coord(o, "start", where), coord(o, "end", where)};
        if (x.end < x.start) throw FormatError(where + ": end precedes start");
        ids.push_back(x.id);
        f.instance.jobs.push_back({x.id, x.start, x.end, 1});
        f.intervals.push_back(std::move(x));
      }
    } else if (doc.contains("points")) {
      f.kind = InstanceFile::Kind::points;
      const json& pts = array_field(doc, "points");
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const json& o = pts[i];
        Job j;
        if (o.is_number_integer()) {
          j.id = "p" + std::to_string(i);
          j.release = coord(json{{"release", o}}, "release", "point " + std::to_string(i));
        } else if (o.is_object()) {
          j.id = id_of(o, i, "p");
          j.release = coord(o, "release", "point " + std::to_string(i));
        } else {
          throw FormatError("point " + std::to_string(i) + " must be an integer or object");
        }
        ids.push_back(j.id);
        f.instance.jobs.push_back(std::move(j));
      }
    } else {
      throw FormatError("instance needs a \"jobs\", \"intervals\" or \"points\" array");
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad instance: ") + e.what());
  }
  unique_ids(ids);
  return f;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string dump_instance(const Instance& instance) {
  json jobs = json::array();
  for (const Job& j : instance.jobs) {
    json o;
    o["id"] = j.id;
    o["release"] = j.release;
    if (j.deadline) o["deadline"] = *j.deadline;
    if (j.weight != 1) o["weight"] = j.weight;
    jobs.push_back(std::move(o));
  }
  json doc;
  doc["jobs"] = std::move(jobs);
  return doc.dump(2) + "\n";
}

std::string report_json(const SolveReport& r) {
  json doc;
  doc["status"] = r.feasible ? "ok" : "infeasible";
  doc["objective"] = r.objective;
  if (r.feasible) {
    doc["value"] = value_json(r.value);
    if (r.schedule && r.instance) {
      json s = json::object();
      json skipped = json::array();
      for (std::size_t j = 0; j < r.instance->size(); ++j) {
        if (r.schedule->assigned(j)) {
          s[r.instance->jobs[j].id] = r.schedule->slot(j);
        } else {
          skipped.push_back(r.instance->jobs[j].id);
        }
      }
      doc["schedule"] = std::move(s);
      if (!skipped.empty()) doc["unscheduled"] = std::move(skipped);
    }
    if (r.hitting && r.intervals) {
      json p = json::object();
      for (std::size_t i = 0; i < r.intervals->size(); ++i) {
        const auto& rep = r.hitting->representative[i];
        p[(*r.intervals)[i].id] = rep ? value_json(*rep) : json(nullptr);
      }
      doc["points"] = std::move(p);
    }
    if (r.points) doc["points"] = *r.points;
    if (r.stats) {
      doc["stats"] = {{"gap_count", r.stats->gap_count},
                      {"max_idle", r.stats->max_idle},
                      {"max_separation", r.stats->max_separation},
                      {"total_flow", r.stats->total_flow},
                      {"max_flow", r.stats->max_flow}};
    }
  } else {
    json w = json::object();
    if (r.hall_window) w["window"] = {r.hall_window->first, r.hall_window->last};
    if (r.blocking_job) w["job"] = *r.blocking_job;
    doc["witness"] = std::move(w);
    doc["message"] = r.message;
  }
  doc["solver"] = r.solver;
  doc["elapsed_ms"] = r.elapsed_ms;
  return doc.dump(2) + "\n";
}

std::string report_text(const SolveReport& r) {
  std::ostringstream out;
  if (!r.feasible) {
    out << r.objective << ": infeasible";
    if (r.hall_window) out << " (window [" << r.hall_window->first << "," << r.hall_window->last << "])";
    if (r.blocking_job) out << " (job " << *r.blocking_job << ")";
    out << "\n";
    if (!r.message.empty()) out << r.message << "\n";
    return out.str();
  }
  out << r.objective << ": " << value_text(r.value) << "  [" << r.solver << ", " << r.elapsed_ms
      << " ms]\n";
  if (r.schedule && r.instance) {
    for (std::size_t j = 0; j < r.instance->size(); ++j) {
      out << "  " << r.instance->jobs[j].id << " -> ";
      if (r.schedule->assigned(j)) {
        out << r.schedule->slot(j) << "\n";
      } else {
        out << "unscheduled\n";
      }
    }
  }
  if (r.hitting && r.intervals) {
    for (std::size_t i = 0; i < r.intervals->size(); ++i) {
      const auto& rep = r.hitting->representative[i];
      out << "  " << (*r.intervals)[i].id << " -> " << (rep ? rep->str() : "-") << "\n";
    }
  }
  if (r.points) {
    out << "  points:";
    for (Slot p : *r.points) out << " " << p;
    out << "\n";
  }
  if (r.stats) {
    out << "  gaps " << r.stats->gap_count << ", max idle " << r.stats->max_idle << ", max separation "
        << r.stats->max_separation << ", total flow " << r.stats->total_flow << ", max flow "
        << r.stats->max_flow << "\n";
  }
  return out.str();
}

}  // namespace gapsched
