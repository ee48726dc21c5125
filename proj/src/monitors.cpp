#include "sdnmc/monitors.hpp"

#include <map>
#include <set>

namespace sdnmc {

namespace {

void check_safety(const Config& cfg, std::vector<Violation>& out) {
  const ScenarioContext& ctx = *cfg.ctx;
  PolicyFamily fam = ctx.policy.family;
  const auto& ctrl = std::get<ControllerHeap>(cfg.actor(ctx.controller).heap);
  for (const Actor& a : cfg.actors) {
    const auto* h = std::get_if<HostHeap>(&a.heap);
    if (h == nullptr) continue;
    for (const Packet& p : h->delivered) {
      if ((fam == PolicyFamily::SshBuggy || fam == PolicyFamily::SshCorrect) &&
          p.header.kind == PacketKind::Ssh)
        out.push_back({ViolationKind::UnsafeDelivery, h->name, p.id,
                       "ssh packet delivered"});
      if ((fam == PolicyFamily::Mi || fam == PolicyFamily::Mib) &&
          ctrl.policy.trusted.count(p.header.src) == 0)
        out.push_back({ViolationKind::UnsafeDelivery, h->name, p.id,
                       "delivery from untrusted " + p.header.src});
    }
  }
}

// Per-header forwarding graph over switches, built from lookup winners.
// Flags forwarding to non-neighbors, branching (two winners for one header
// leaving one switch toward different switches) and directed cycles.
void check_consistency(const Config& cfg, std::vector<Violation>& out) {
  const Topology& top = cfg.ctx->topology;
  std::map<PacketHeader, std::map<SwitchName, std::set<SwitchName>>> edges;
  for (const Actor& a : cfg.actors) {
    const auto* sw = std::get_if<SwitchHeap>(&a.heap);
    if (sw == nullptr) continue;
    std::set<MatchField> keys;
    for (const FlowEntry& e : sw->table.entries()) keys.insert(e.match);
    for (const MatchField& m : keys) {
      auto act = sw->table.lookup(m.header, m.port);
      if (!act || act->kind != Action::Kind::ToSwitch) continue;
      if (!top.adjacent(sw->name, act->target)) {
        out.push_back({ViolationKind::InconsistentTables, sw->name, -1,
                       "forwards to non-neighbor " + act->target});
        continue;
      }
      edges[m.header][sw->name].insert(act->target);
    }
  }
  for (const auto& [header, graph] : edges) {
    for (const auto& [from, targets] : graph)
      if (targets.size() > 1)
        out.push_back({ViolationKind::InconsistentTables, from, -1,
                       "branching path for " + header.src + "->" + header.dst});
    // Cycle detection by DFS with colors.
    std::map<SwitchName, int> mark;  // 0 unseen, 1 on stack, 2 done
    std::vector<std::pair<SwitchName, bool>> stack;
    for (const auto& [start, _] : graph) {
      if (mark[start] != 0) continue;
      stack.push_back({start, false});
      while (!stack.empty()) {
        auto [node, leaving] = stack.back();
        stack.pop_back();
        if (leaving) {
          mark[node] = 2;
          continue;
        }
        if (mark[node] == 1) continue;
        mark[node] = 1;
        stack.push_back({node, true});
        auto it = graph.find(node);
        if (it == graph.end()) continue;
        for (const SwitchName& next : it->second) {
          if (mark[next] == 1) {
            out.push_back({ViolationKind::InconsistentTables, next, -1,
                           "cycle for " + header.src + "->" + header.dst});
          } else if (mark[next] == 0) {
            stack.push_back({next, false});
          }
        }
      }
    }
  }
}

}  // namespace

std::vector<Violation> final_state_violations(const Config& cfg) {
  std::vector<Violation> out;
  if (cfg.ctx->monitors.safety) check_safety(cfg, out);
  if (cfg.ctx->monitors.consistency) check_consistency(cfg, out);
  return out;
}

BarrierCheckResult check_barrier_discipline(
    const std::vector<StepSummary>& trace, const ScenarioContext& ctx) {
  BarrierCheckResult res;
  struct Window {
    bool open = false;
    std::set<TaskId> snapshot;  // installs pending at activation
  };
  std::map<SwitchName, Window> windows;
  std::map<SwitchName, std::set<TaskId>> pending;  // spawned, unfinished installs
  std::map<TaskId, SwitchName> install_switch;

  for (const StepSummary& step : trace) {
    for (const StepSummary::Spawn& sp : step.spawned) {
      if (sp.method != Method::SwitchHandleMessage) continue;
      const std::string& sw = ctx.actor_names.at(static_cast<size_t>(sp.actor));
      if (windows[sw].open)
        res.problems.push_back("install spawned for " + sw +
                               " inside an active barrier window");
      pending[sw].insert(sp.task);
      install_switch[sp.task] = sw;
    }
    for (const StepSummary::BarrierEvent& ev : step.barrier_events) {
      Window& w = windows[ev.sw];
      if (ev.activate) {
        if (w.open) {
          res.problems.push_back("overlapping barrier windows for " + ev.sw);
        } else {
          w.open = true;
          w.snapshot = pending[ev.sw];
          ++res.windows;
        }
      } else {
        for (TaskId t : w.snapshot)
          if (pending[ev.sw].count(t) != 0)
            res.problems.push_back("barrier for " + ev.sw +
                                   " completed with unprocessed install");
        w.open = false;
        w.snapshot.clear();
      }
    }
    if (step.task_finished) {
      auto it = install_switch.find(step.move.task);
      if (it != install_switch.end()) pending[it->second].erase(step.move.task);
    }
  }
  return res;
}

}  // namespace sdnmc
