#include <doctest.h>

#include <cstdint>

#include <json.hpp>

#include "helpers.hpp"
#include "sdnmc/build.hpp"
#include "sdnmc/report.hpp"

using namespace sdnmc;
using nlohmann::json;

namespace {

Scenario lb_fan_scenario(bool barriers = false) {
  Scenario s;
  s.name = "lb_fan";
  s.topology = test::fan_topology();
  s.policy = test::lb_spec();
  s.barriers = barriers;
  s.monitors.loop = true;
  s.injections = {{"h0", {"h0", kVipName, PacketKind::Other}, 1}};
  return s;
}

json report_for(const Scenario& s, ExplorationOptions opts) {
  ExplorationResult r = explore(build_initial_config(scenario_context(s)), opts);
  return run_report(s, opts, r);
}

}  // namespace

TEST_CASE("fingerprints render as fixed-width hex") {
  CHECK(fingerprint_hex(0) == "0000000000000000");
  CHECK(fingerprint_hex(0xdeadbeefull) == "00000000deadbeef");
  CHECK(fingerprint_hex(UINT64_MAX) == "ffffffffffffffff");
}

TEST_CASE("traces serialize as actor and task pairs") {
  json t = trace_json({{2, 5}, {0, 1}});
  REQUIRE(t.size() == 2);
  CHECK(t[0] == json({{"actor", 2}, {"task", 5}}));
  CHECK(t[1] == json({{"actor", 0}, {"task", 1}}));
}

TEST_CASE("a run report carries the exploration outcome") {
  Scenario s = lb_fan_scenario();
  ExplorationOptions opts;
  json j = report_for(s, opts);

  CHECK(j["scenario"] == "lb_fan");
  CHECK(j["mode"] == "full");
  CHECK(j["independence"] == "actor");
  CHECK(j["barriers"] == false);
  CHECK(j["packets"] == 1);
  CHECK(j["executions"] == 8);
  CHECK(j["states"] == 40);
  CHECK(j["deadlocks"] == 0);
  CHECK(j["distinct_final_states"] == 8);
  CHECK(j["violating_executions"] == 2);
  CHECK(j["violations_by_kind"]["forwarding_loop"] == 2);
  CHECK_FALSE(j.contains("barrier_discipline"));
  CHECK_FALSE(j.contains("commutation"));

  REQUIRE(j["final_states"].size() == 8);
  std::string prev;
  for (const json& f : j["final_states"]) {
    std::string fp = f["fingerprint"].get<std::string>();
    CHECK(fp.size() == 16);
    CHECK(fp.find_first_not_of("0123456789abcdef") == std::string::npos);
    CHECK(prev < fp);  // sorted and free of collisions
    prev = fp;
    CHECK(f["count"].get<long>() >= 1);
    CHECK(f["deadlock"] == false);
  }
}

TEST_CASE("reports are identical across repeated runs") {
  Scenario s = lb_fan_scenario();
  ExplorationOptions opts;
  json a = report_for(s, opts);
  json b = report_for(s, opts);
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  CHECK(a == b);
}

TEST_CASE("property mode reports the first counterexample") {
  Scenario s;
  s.name = "ssh_buggy";
  s.topology = test::pair_topology();
  s.policy.family = PolicyFamily::SshBuggy;
  s.monitors.contradiction = true;
  s.injections = {{"h1", {"h1", "h2", PacketKind::Ssh}, 1}};

  ExplorationOptions opts;
  opts.mode = ExploreMode::Property;
  json j = report_for(s, opts);

  CHECK(j["stopped_early"] == true);
  REQUIRE(j.contains("first_violation"));
  const json& v = j["first_violation"];
  CHECK(v["trace"].size() > 0);
  REQUIRE(v["violations"].size() > 0);
  CHECK(v["violations"][0]["kind"] == "contradictory_rules");
  CHECK(v["violations"][0]["where"] == "s1");
}

TEST_CASE("barrier runs report the window discipline") {
  Scenario s = lb_fan_scenario(true);
  ExplorationOptions opts;
  json j = report_for(s, opts);
  REQUIRE(j.contains("barrier_discipline"));
  CHECK(j["barrier_discipline"]["windows"] == 2);
  CHECK(j["barrier_discipline"]["problems"] == 0);
  CHECK(j["executions"] == 1);
}

TEST_CASE("commutation checks appear when requested") {
  Scenario s = lb_fan_scenario();
  ExplorationOptions opts;
  opts.debug_commutation = true;
  json j = report_for(s, opts);
  REQUIRE(j.contains("commutation"));
  CHECK(j["commutation"]["checks"].get<long>() > 0);
  CHECK(j["commutation"]["failures"] == 0);
}

TEST_CASE("the crosscheck report maps the verdict") {
  Scenario s = lb_fan_scenario();
  CrosscheckResult ok;
  ok.match = true;
  ok.actor_finals = {"k1", "k2"};
  ok.reference_finals = {"k1", "k2"};
  json j = crosscheck_report(s, ok);
  CHECK(j["verdict"] == "MATCH");
  CHECK(j["actor"]["final_states"] == 2);
  CHECK_FALSE(j.contains("only_actor"));

  CrosscheckResult bad;
  bad.match = false;
  bad.actor_finals = {"a", "b", "c", "d", "x"};
  bad.reference_finals = {"x", "y"};
  json m = crosscheck_report(s, bad);
  CHECK(m["verdict"] == "MISMATCH");
  CHECK(m["only_actor"] == json({"a", "b", "c"}));  // capped at three samples
  CHECK(m["only_reference"] == json({"y"}));
}
