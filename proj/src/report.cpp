#include "sdnmc/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace sdnmc {
namespace {

nlohmann::json violations_json(const std::vector<Violation>& vio) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Violation& v : vio) {
    nlohmann::json jv;
    jv["kind"] = to_string(v.kind);
    jv["where"] = v.where;
    if (v.pid >= 0) jv["packet"] = v.pid;
    if (!v.detail.empty()) jv["detail"] = v.detail;
    arr.push_back(std::move(jv));
  }
  return arr;
}

}  // namespace

std::string fingerprint_hex(uint64_t fp) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fp;
  return os.str();
}

nlohmann::json trace_json(const std::vector<Move>& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Move& m : trace)
    arr.push_back({{"actor", m.actor}, {"task", m.task}});
  return arr;
}

nlohmann::json run_report(const Scenario& s, const ExplorationOptions& opts,
                          const ExplorationResult& r) {
  nlohmann::json j;
  j["scenario"] = s.name;
  j["mode"] = to_string(opts.mode);
  j["independence"] = to_string(opts.independence);
  j["barriers"] = s.barriers;
  j["packets"] = s.total_packets();

  j["executions"] = r.executions;
  j["states"] = r.states;
  j["deadlocks"] = r.deadlocks;
  j["depth_exhausted"] = r.depth_exhausted;
  j["truncated"] = r.truncated;
  j["stopped_early"] = r.stopped_early;
  j["distinct_final_states"] = r.distinct_finals();

  j["violating_executions"] = r.violating_executions;
  nlohmann::json by_kind = nlohmann::json::object();
  for (const auto& [kind, n] : r.executions_with) by_kind[to_string(kind)] = n;
  j["violations_by_kind"] = std::move(by_kind);

  nlohmann::json finals = nlohmann::json::array();
  for (const auto& [key, info] : r.final_info) {
    nlohmann::json jf;
    jf["fingerprint"] = fingerprint_hex(info.fingerprint);
    jf["count"] = info.count;
    jf["deadlock"] = info.deadlock;
    if (!info.summary.empty()) jf["state"] = info.summary;
    finals.push_back(std::move(jf));
  }
  std::sort(finals.begin(), finals.end(),
            [](const nlohmann::json& a, const nlohmann::json& b) {
              return a["fingerprint"] < b["fingerprint"];
            });
  j["final_states"] = std::move(finals);

  if (r.first_violation) {
    nlohmann::json jv;
    jv["trace"] = trace_json(r.first_violation->trace);
    jv["violations"] = violations_json(r.first_violation->violations);
    j["first_violation"] = std::move(jv);
  }

  if (s.barriers) {
    nlohmann::json jb;
    jb["windows"] = r.barrier_windows;
    jb["problems"] = r.barrier_problems;
    if (!r.barrier_problem_samples.empty())
      jb["problem_samples"] = r.barrier_problem_samples;
    j["barrier_discipline"] = std::move(jb);
  }

  if (opts.debug_commutation) {
    nlohmann::json jc;
    jc["checks"] = r.commutation_checks;
    jc["failures"] = r.commutation_failures;
    if (!r.commutation_failure_samples.empty())
      jc["failure_samples"] = r.commutation_failure_samples;
    j["commutation"] = std::move(jc);
  }

  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

nlohmann::json crosscheck_report(const Scenario& s, const CrosscheckResult& r) {
  nlohmann::json j;
  j["scenario"] = s.name;
  j["verdict"] = r.match ? "MATCH" : "MISMATCH";
  j["match"] = r.match;

  j["actor"] = {{"final_states", r.actor_finals.size()},
                {"executions", r.actor_executions},
                {"depth_exhausted", r.actor_depth_exhausted}};
  j["reference"] = {{"final_states", r.reference_finals.size()},
                    {"visited", r.reference_visited},
                    {"bound_exhausted", r.reference_bound_exhausted},
                    {"stuck", r.reference_stuck}};
  j["truncated"] = r.truncated;

  if (!r.match) {
    auto sample_diff = [](const std::set<std::string>& a,
                          const std::set<std::string>& b) {
      nlohmann::json arr = nlohmann::json::array();
      for (const std::string& k : a) {
        if (b.count(k)) continue;
        arr.push_back(k);
        if (arr.size() >= 3) break;
      }
      return arr;
    };
    j["only_actor"] = sample_diff(r.actor_finals, r.reference_finals);
    j["only_reference"] = sample_diff(r.reference_finals, r.actor_finals);
  }

  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace sdnmc
