#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "sdnmc/config.hpp"
#include "sdnmc/explore.hpp"

namespace sdnmc {

// Scenario-level exploration defaults; command-line flags override.
struct ExplorationSettings {
  ExploreMode mode = ExploreMode::Full;
  IndependenceLevel independence = IndependenceLevel::Actor;
  int max_depth = 100000;
};

struct Scenario {
  std::string name;
  Topology topology;
  PolicySpec policy;
  bool barriers = false;
  std::vector<Injection> injections;
  MonitorSet monitors;
  ExplorationSettings exploration;

  int total_packets() const;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

Scenario load_scenario_file(const std::string& path);

std::shared_ptr<const ScenarioContext> scenario_context(const Scenario& s);

}  // namespace sdnmc
