#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sdnmc/scenario.hpp"

using namespace sdnmc;
using nlohmann::json;

namespace {

const char* kLbbText = R"({
  "name": "lbb_pair",
  "topology": {
    "switch_host_links": [
      {"switch": "s1", "host": "h0", "port": 0},
      {"switch": "s2", "host": "r1", "port": 0}
    ],
    "switch_switch_links": [
      {"switch_a": "s1", "port_a": 1, "switch_b": "s2", "port_b": 1}
    ]
  },
  "controller": {"family": "LBB", "replicas": ["r1"]},
  "injections": [{"host": "h0", "dst": "VIP"}]
})";

}  // namespace

TEST_CASE("parsing fills in the documented defaults") {
  Scenario s = scenario_from_json(json::parse(kLbbText));
  CHECK(s.name == "lbb_pair");
  CHECK(s.policy.family == PolicyFamily::Lb);
  CHECK(s.barriers);  // the LBB alias implies a barrier-aware controller
  CHECK(s.policy.replicas == std::vector<HostName>{"r1"});

  REQUIRE(s.injections.size() == 1);
  CHECK(s.injections[0].host == "h0");
  CHECK(s.injections[0].header.src == "h0");  // src defaults to the sender
  CHECK(s.injections[0].header.dst == "VIP");
  CHECK(s.injections[0].header.kind == PacketKind::Other);
  CHECK(s.injections[0].count == 1);
  CHECK(s.total_packets() == 1);

  // No properties section: every monitor stays off.
  CHECK_FALSE(s.monitors.loop);
  CHECK_FALSE(s.monitors.contradiction);
  CHECK_FALSE(s.monitors.safety);
  CHECK_FALSE(s.monitors.consistency);

  CHECK(s.exploration.mode == ExploreMode::Full);
  CHECK(s.exploration.independence == IndependenceLevel::Actor);
  CHECK(s.exploration.max_depth == 100000);

  CHECK(s.topology.host_attachment("h0") ==
        std::pair<SwitchName, PortId>{"s1", 0});
}

TEST_CASE("explicit settings override the defaults") {
  json j = json::parse(kLbbText);
  j["controller"]["family"] = "MI";
  j["controller"]["trusted_port"] = 2;
  j["injections"][0] = {{"host", "h0"}, {"src", "r1"}, {"dst", "r1"},
                        {"kind", "SSH"}, {"count", 3}};
  j["properties"] = {"unsafe_delivery", "forwarding_loop"};
  j["exploration"] = {{"mode", "property"}, {"independence", "context"},
                      {"max_depth", 7}};

  Scenario s = scenario_from_json(j);
  CHECK(s.policy.family == PolicyFamily::Mi);
  CHECK(s.policy.trusted_port == 2);
  CHECK_FALSE(s.barriers);
  CHECK(s.injections[0].header.src == "r1");
  CHECK(s.injections[0].header.kind == PacketKind::Ssh);
  CHECK(s.injections[0].count == 3);
  CHECK(s.total_packets() == 3);
  CHECK(s.monitors.safety);
  CHECK(s.monitors.loop);
  CHECK_FALSE(s.monitors.contradiction);
  CHECK(s.exploration.mode == ExploreMode::Property);
  CHECK(s.exploration.independence == IndependenceLevel::Context);
  CHECK(s.exploration.max_depth == 7);
}

TEST_CASE("serialization round-trips through the parser") {
  json first = scenario_to_json(scenario_from_json(json::parse(kLbbText)));
  // The alias is normalized: the family and the barrier flag are explicit.
  CHECK(first["controller"]["family"] == "LB");
  CHECK(first["controller"]["barriers"] == true);
  json second = scenario_to_json(scenario_from_json(first));
  CHECK(first == second);
}

TEST_CASE("unknown names are rejected") {
  json j = json::parse(kLbbText);

  SUBCASE("controller family") {
    j["controller"]["family"] = "QOS";
    CHECK_THROWS_WITH_AS(scenario_from_json(j),
                         "unknown controller family: QOS", std::runtime_error);
  }
  SUBCASE("property") {
    j["properties"] = {"liveness"};
    CHECK_THROWS_WITH_AS(scenario_from_json(j), "unknown property: liveness",
                         std::runtime_error);
  }
  SUBCASE("packet kind") {
    j["injections"][0]["kind"] = "ICMP";
    CHECK_THROWS_AS(scenario_from_json(j), std::runtime_error);
  }
  SUBCASE("independence level") {
    j["exploration"] = {{"independence", "hyper"}};
    CHECK_THROWS_AS(scenario_from_json(j), std::runtime_error);
  }
}

TEST_CASE("scenario files load from disk") {
  std::string path = "scenario_test_tmp.json";
  {
    std::ofstream out(path);
    out << kLbbText;
  }
  Scenario s = load_scenario_file(path);
  CHECK(s.name == "lbb_pair");
  std::remove(path.c_str());

  CHECK_THROWS_WITH_AS(load_scenario_file("no_such_dir/missing.json"),
                       "cannot open scenario file: no_such_dir/missing.json",
                       std::runtime_error);
}
