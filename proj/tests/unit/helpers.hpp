#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sdnmc/build.hpp"
#include "sdnmc/config.hpp"
#include "sdnmc/runtime.hpp"
#include "sdnmc/topology.hpp"

namespace sdnmc::test {

// Three switches in a fan: s1 carries the client h0, s2 and s3 carry the
// replicas r1 and r2.
inline Topology fan_topology() {
  Topology t;
  t.add_sh_link({"s1", "h0", 0});
  t.add_sh_link({"s2", "r1", 0});
  t.add_sh_link({"s3", "r2", 0});
  t.add_ss_link({"s1", 1, "s2", 1});
  t.add_ss_link({"s1", 2, "s3", 1});
  t.finalize();
  return t;
}

// Two switches back to back, one host each.
inline Topology pair_topology() {
  Topology t;
  t.add_sh_link({"s1", "h1", 0});
  t.add_sh_link({"s2", "h2", 0});
  t.add_ss_link({"s1", 1, "s2", 1});
  t.finalize();
  return t;
}

// One switch, three hosts on ports 0..2.
inline Topology star_topology() {
  Topology t;
  t.add_sh_link({"s1", "h1", 0});
  t.add_sh_link({"s1", "h2", 1});
  t.add_sh_link({"s1", "h3", 2});
  t.finalize();
  return t;
}

inline PolicySpec lb_spec() {
  PolicySpec p;
  p.family = PolicyFamily::Lb;
  p.replicas = {"r1", "r2"};
  return p;
}

inline std::shared_ptr<const ScenarioContext> lb_fan_context(
    int packets = 1, bool barriers = false, bool loop_monitor = true) {
  MonitorSet mon;
  mon.loop = loop_monitor;
  std::vector<Injection> inj;
  for (int i = 0; i < packets; ++i)
    inj.push_back({"h0", {"h0", kVipName, PacketKind::Other}, 1});
  return make_context("lb_fan", fan_topology(), lb_spec(), barriers, mon, inj);
}

inline std::shared_ptr<const ScenarioContext> ssh_pair_context(
    bool buggy, bool barriers = false) {
  PolicySpec p;
  p.family = buggy ? PolicyFamily::SshBuggy : PolicyFamily::SshCorrect;
  MonitorSet mon;
  mon.contradiction = true;
  std::vector<Injection> inj{{"h1", {"h1", "h2", PacketKind::Ssh}, 1}};
  return make_context("ssh_pair", pair_topology(), p, barriers, mon, inj);
}

// Runs the smallest enabled move until nothing is enabled; returns the chosen
// schedule. Deterministic, so repeated runs agree.
inline std::vector<Move> drive_min(Config& cfg, int limit = 1000) {
  std::vector<Move> schedule;
  for (int i = 0; i < limit; ++i) {
    auto en = enabled_moves(cfg);
    if (en.empty()) return schedule;
    cfg = macro_step(cfg, en.front());
    schedule.push_back(en.front());
  }
  throw std::runtime_error("drive_min: schedule limit hit");
}

// Steps the first enabled move whose running task has the given method;
// throws if none matches.
inline Move step_method(Config& cfg, Method m, StepSummary* sum = nullptr) {
  for (const Move& mv : enabled_moves(cfg)) {
    const Task* t = cfg.actor(mv.actor).find_task(mv.task);
    if (t != nullptr && t->method == m) {
      cfg = macro_step(cfg, mv, sum);
      return mv;
    }
  }
  throw std::runtime_error("step_method: no enabled task with that method");
}

inline const SwitchHeap& switch_heap(const Config& cfg, const SwitchName& s) {
  return std::get<SwitchHeap>(cfg.actor(cfg.ctx->actor_for(s)).heap);
}

inline const HostHeap& host_heap(const Config& cfg, const HostName& h) {
  return std::get<HostHeap>(cfg.actor(cfg.ctx->actor_for(h)).heap);
}

inline const ControllerHeap& controller_heap(const Config& cfg) {
  return std::get<ControllerHeap>(cfg.actor(cfg.ctx->controller).heap);
}

}  // namespace sdnmc::test
