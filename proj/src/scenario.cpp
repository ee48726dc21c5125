#include "sdnmc/scenario.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sdnmc/build.hpp"

namespace sdnmc {

using nlohmann::json;

int Scenario::total_packets() const {
  int n = 0;
  for (const Injection& inj : injections) n += inj.count;
  return n;
}

namespace {

PolicyFamily family_from_string(const std::string& s, bool& barriers) {
  if (s == "LB") return PolicyFamily::Lb;
  if (s == "LBB") {
    barriers = true;
    return PolicyFamily::Lb;
  }
  if (s == "SSH_BUGGY") return PolicyFamily::SshBuggy;
  if (s == "SSH_CORRECT") return PolicyFamily::SshCorrect;
  if (s == "SSHB") {
    barriers = true;
    return PolicyFamily::SshCorrect;
  }
  if (s == "LE") return PolicyFamily::Le;
  if (s == "MI") return PolicyFamily::Mi;
  if (s == "MIB") return PolicyFamily::Mib;
  throw std::runtime_error("unknown controller family: " + s);
}

MonitorSet monitors_from_json(const json& props) {
  MonitorSet m;
  for (const auto& p : props) {
    std::string s = p.get<std::string>();
    if (s == "forwarding_loop")
      m.loop = true;
    else if (s == "contradictory_rules")
      m.contradiction = true;
    else if (s == "unsafe_delivery")
      m.safety = true;
    else if (s == "inconsistent_tables")
      m.consistency = true;
    else
      throw std::runtime_error("unknown property: " + s);
  }
  return m;
}

json monitors_to_json(const MonitorSet& m) {
  json out = json::array();
  if (m.loop) out.push_back("forwarding_loop");
  if (m.contradiction) out.push_back("contradictory_rules");
  if (m.safety) out.push_back("unsafe_delivery");
  if (m.consistency) out.push_back("inconsistent_tables");
  return out;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.name = j.value("name", "scenario");

  const json& topo = j.at("topology");
  if (topo.contains("switch_host_links"))
    for (const auto& l : topo.at("switch_host_links"))
      s.topology.add_sh_link({l.at("switch").get<std::string>(),
                              l.at("host").get<std::string>(),
                              l.at("port").get<PortId>()});
  if (topo.contains("switch_switch_links"))
    for (const auto& l : topo.at("switch_switch_links"))
      s.topology.add_ss_link({l.at("switch_a").get<std::string>(),
                              l.at("port_a").get<PortId>(),
                              l.at("switch_b").get<std::string>(),
                              l.at("port_b").get<PortId>()});
  s.topology.finalize();

  const json& ctrl = j.at("controller");
  bool barrier_alias = false;
  s.policy.family =
      family_from_string(ctrl.at("family").get<std::string>(), barrier_alias);
  s.barriers = ctrl.value("barriers", false) || barrier_alias;
  if (ctrl.contains("replicas"))
    for (const auto& r : ctrl.at("replicas"))
      s.policy.replicas.push_back(r.get<std::string>());
  s.policy.trusted_port = ctrl.value("trusted_port", 1);
  if (ctrl.contains("authenticated"))
    for (const auto& h : ctrl.at("authenticated"))
      s.policy.authenticated.insert(h.get<std::string>());

  for (const auto& inj : j.at("injections")) {
    Injection i;
    i.host = inj.at("host").get<std::string>();
    i.header.src = inj.value("src", i.host);
    i.header.dst = inj.at("dst").get<std::string>();
    i.header.kind = packet_kind_from_string(inj.value("kind", "OTHER"));
    i.count = inj.value("count", 1);
    s.injections.push_back(std::move(i));
  }

  if (j.contains("properties")) s.monitors = monitors_from_json(j.at("properties"));

  if (j.contains("exploration")) {
    const json& e = j.at("exploration");
    s.exploration.mode = mode_from_string(e.value("mode", "full"));
    s.exploration.independence =
        independence_from_string(e.value("independence", "actor"));
    s.exploration.max_depth = e.value("max_depth", 100000);
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json topo;
  topo["switch_host_links"] = json::array();
  for (const auto& l : s.topology.sh_links())
    topo["switch_host_links"].push_back(
        {{"switch", l.sw}, {"host", l.host}, {"port", l.port}});
  topo["switch_switch_links"] = json::array();
  for (const auto& l : s.topology.ss_links())
    topo["switch_switch_links"].push_back({{"switch_a", l.a},
                                           {"port_a", l.port_a},
                                           {"switch_b", l.b},
                                           {"port_b", l.port_b}});

  json ctrl;
  ctrl["family"] = to_string(s.policy.family);
  ctrl["barriers"] = s.barriers;
  if (!s.policy.replicas.empty()) {
    ctrl["replicas"] = json::array();
    for (const HostName& r : s.policy.replicas) ctrl["replicas"].push_back(r);
  }
  ctrl["trusted_port"] = s.policy.trusted_port;
  if (!s.policy.authenticated.empty()) {
    ctrl["authenticated"] = json::array();
    for (const HostName& h : s.policy.authenticated)
      ctrl["authenticated"].push_back(h);
  }

  json injections = json::array();
  for (const Injection& i : s.injections)
    injections.push_back({{"host", i.host},
                          {"src", i.header.src},
                          {"dst", i.header.dst},
                          {"kind", to_string(i.header.kind)},
                          {"count", i.count}});

  json out;
  out["name"] = s.name;
  out["topology"] = std::move(topo);
  out["controller"] = std::move(ctrl);
  out["injections"] = std::move(injections);
  out["properties"] = monitors_to_json(s.monitors);
  out["exploration"] = {{"mode", to_string(s.exploration.mode)},
                        {"independence", to_string(s.exploration.independence)},
                        {"max_depth", s.exploration.max_depth}};
  return out;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  json j;
  in >> j;
  return scenario_from_json(j);
}

std::shared_ptr<const ScenarioContext> scenario_context(const Scenario& s) {
  return make_context(s.name, s.topology, s.policy, s.barriers, s.monitors,
                      s.injections);
}

}  // namespace sdnmc
