#include "sdnmc/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sdnmc {

namespace {

template <typename T>
void sorted_insert(std::vector<T>& v, const T& x) {
  v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

std::string header_bytes(const PacketHeader& h) {
  return h.src + ">" + h.dst + ">" + to_string(h.kind);
}

std::string packet_bytes(const Packet& p) {
  return std::to_string(p.id) + ":" + header_bytes(p.header);
}

std::string entry_bytes(const FlowEntry& e) {
  return header_bytes(e.match.header) + "@" + std::to_string(e.match.port) +
         "#" + std::to_string(e.priority) + "->" + to_string(e.action);
}

std::string pktin_bytes(const PktInItem& i) {
  return i.sid + "@" + std::to_string(i.port) + ":" + std::to_string(i.pid) +
         ":" + header_bytes(i.header);
}

std::string policy_bytes(const PolicyState& p) {
  std::string out = "lb[";
  for (const auto& [pid, n] : p.lb_attempts)
    out += std::to_string(pid) + "=" + std::to_string(n) + ";";
  out += "]lrn[";
  for (const auto& [host, at] : p.learned)
    out += host + "=" + at.first + ":" + std::to_string(at.second) + ";";
  out += "]tr[";
  for (const HostName& h : p.trusted) out += h + ";";
  return out + "]";
}

}  // namespace

OracleHost& OracleState::host(const HostName& h) {
  auto it = std::lower_bound(
      hosts.begin(), hosts.end(), h,
      [](const auto& kv, const HostName& name) { return kv.first < name; });
  if (it == hosts.end() || it->first != h)
    throw std::logic_error("oracle: unknown host " + h);
  return it->second;
}

OracleSwitch& OracleState::sw(const SwitchName& s) {
  auto it = std::lower_bound(
      switches.begin(), switches.end(), s,
      [](const auto& kv, const SwitchName& name) { return kv.first < name; });
  if (it == switches.end() || it->first != s)
    throw std::logic_error("oracle: unknown switch " + s);
  return it->second;
}

OracleState build_oracle_initial(std::shared_ptr<const ScenarioContext> ctx) {
  OracleState st;
  st.ctx = ctx;
  for (const SwitchName& s : ctx->topology.switches())
    st.switches.push_back({s, OracleSwitch{}});
  for (const HostName& h : ctx->topology.hosts()) {
    auto [sw, port] = ctx->topology.host_attachment(h);
    st.hosts.push_back({h, OracleHost{sw, port, {}, {}}});
  }
  PacketId next_pid = 0;
  for (const Injection& inj : ctx->injections)
    for (int i = 0; i < inj.count; ++i)
      sorted_insert(st.host(inj.host).fresh, Packet{next_pid++, inj.header});
  return st;
}

namespace {

// Applies a flow-table action to a packet in flight.
void oracle_dispatch(OracleState& st, const Packet& p, const Action& act) {
  switch (act.kind) {
    case Action::Kind::ToHost:
      sorted_insert(st.host(act.target).deliver, p);
      break;
    case Action::Kind::ToSwitch:
      sorted_insert(st.sw(act.target).arrivals, std::make_pair(p, act.port));
      break;
    case Action::Kind::Drop:
      break;
  }
}

}  // namespace

std::vector<std::pair<std::string, OracleState>> successors(const OracleState& st) {
  std::vector<std::pair<std::string, OracleState>> out;

  for (size_t hi = 0; hi < st.hosts.size(); ++hi) {
    const auto& [hname, host] = st.hosts[hi];
    for (size_t i = 0; i < host.fresh.size(); ++i) {
      OracleState next = st;
      OracleHost& h = next.hosts[hi].second;
      Packet p = h.fresh[i];
      h.fresh.erase(h.fresh.begin() + static_cast<long>(i));
      sorted_insert(next.sw(h.sw).arrivals, std::make_pair(p, h.port));
      out.push_back({"si", std::move(next)});
    }
    for (size_t i = 0; i < host.deliver.size(); ++i) {
      OracleState next = st;
      OracleHost& h = next.hosts[hi].second;
      h.deliver.erase(h.deliver.begin() + static_cast<long>(i));
      out.push_back({"hhp", std::move(next)});
    }
  }

  for (size_t si = 0; si < st.switches.size(); ++si) {
    const auto& [sname, swh] = st.switches[si];
    for (size_t i = 0; i < swh.arrivals.size(); ++i) {
      OracleState next = st;
      OracleSwitch& s = next.switches[si].second;
      auto [p, port] = s.arrivals[i];
      s.arrivals.erase(s.arrivals.begin() + static_cast<long>(i));
      if (auto act = s.table.lookup(p.header, port)) {
        oracle_dispatch(next, p, *act);
      } else {
        sorted_insert(s.buffer, std::make_pair(p, port));
        sorted_insert(next.pktins, PktInItem{sname, port, p.id, p.header});
      }
      out.push_back({"shp", std::move(next)});
    }
    for (size_t i = 0; i < swh.mods.size(); ++i) {
      OracleState next = st;
      OracleSwitch& s = next.switches[si].second;
      FlowEntry e = s.mods[i];
      s.mods.erase(s.mods.begin() + static_cast<long>(i));
      s.table.put(e);
      out.push_back({"shm", std::move(next)});
    }
    for (size_t i = 0; i < swh.pktouts.size(); ++i) {
      // One successor per buffered packet carrying the released header.
      for (size_t b = 0; b < swh.buffer.size(); ++b) {
        if (swh.buffer[b].first.header != swh.pktouts[i]) continue;
        OracleState next = st;
        OracleSwitch& s = next.switches[si].second;
        auto [p, port] = s.buffer[b];
        s.pktouts.erase(s.pktouts.begin() + static_cast<long>(i));
        s.buffer.erase(s.buffer.begin() + static_cast<long>(b));
        if (auto act = s.table.lookup(p.header, port))
          oracle_dispatch(next, p, *act);
        out.push_back({"so", std::move(next)});
      }
    }
  }

  for (size_t i = 0; i < st.pktins.size(); ++i) {
    OracleState next = st;
    PktInItem item = next.pktins[i];
    next.pktins.erase(next.pktins.begin() + static_cast<long>(i));
    ApplyResult r = apply_policy(st.ctx->policy, st.ctx->topology, next.policy,
                                 item.sid, item.port, item.pid, item.header);
    if (r.flood)
      throw std::runtime_error(
          "reference semantics does not model flood delivery");
    for (const Directive& d : r.directives)
      sorted_insert(next.sw(d.sw).mods,
                    FlowEntry{d.match, d.priority, d.action});
    sorted_insert(next.sw(item.sid).pktouts, item.header);
    out.push_back({"chm", std::move(next)});
  }
  return out;
}

bool oracle_complete(const OracleState& st) {
  for (const auto& [_, h] : st.hosts)
    if (!h.fresh.empty() || !h.deliver.empty()) return false;
  for (const auto& [_, s] : st.switches)
    if (!s.arrivals.empty() || !s.mods.empty() || !s.pktouts.empty())
      return false;
  return st.pktins.empty();
}

std::string oracle_canonical(const OracleState& st) {
  std::string out;
  for (const auto& [name, h] : st.hosts) {
    out += "h:" + name + "|new[";
    for (const Packet& p : h.fresh) out += packet_bytes(p) + ";";
    out += "]dlv[";
    for (const Packet& p : h.deliver) out += packet_bytes(p) + ";";
    out += "]\n";
  }
  for (const auto& [name, s] : st.switches) {
    out += "s:" + name + "|ft[";
    for (const FlowEntry& e : s.table.canonical()) out += entry_bytes(e) + ";";
    out += "]buf[";
    for (const auto& [p, port] : s.buffer)
      out += packet_bytes(p) + "@" + std::to_string(port) + ";";
    out += "]arr[";
    for (const auto& [p, port] : s.arrivals)
      out += packet_bytes(p) + "@" + std::to_string(port) + ";";
    out += "]mod[";
    for (const FlowEntry& e : s.mods) out += entry_bytes(e) + ";";
    out += "]out[";
    for (const PacketHeader& ph : s.pktouts) out += header_bytes(ph) + ";";
    out += "]\n";
  }
  out += "c|in[";
  for (const PktInItem& i : st.pktins) out += pktin_bytes(i) + ";";
  out += "]" + policy_bytes(st.policy) + "\n";
  return out;
}

OracleEnumResult oracle_enumerate(const OracleState& initial,
                                  const OracleEnumOptions& opts) {
  OracleEnumResult res;
  int bound = opts.max_steps > 0 ? opts.max_steps
                                 : default_oracle_bound(*initial.ctx);
  std::map<std::string, int> visited;  // canonical -> fewest steps seen
  std::vector<std::pair<OracleState, int>> stack;
  visited[oracle_canonical(initial)] = 0;
  stack.push_back({initial, 0});
  while (!stack.empty()) {
    auto [st, steps] = std::move(stack.back());
    stack.pop_back();
    if (oracle_complete(st)) {
      res.final_keys.insert(oracle_equiv_key(st));
      continue;
    }
    auto succ = successors(st);
    if (succ.empty()) {
      ++res.stuck;
      continue;
    }
    if (steps >= bound) {
      ++res.bound_exhausted;
      continue;
    }
    for (auto& [rule, s2] : succ) {
      std::string key = oracle_canonical(s2);
      auto it = visited.find(key);
      if (it != visited.end() && it->second <= steps + 1) continue;
      if (static_cast<long>(visited.size()) >= opts.node_limit) {
        res.truncated = true;
        continue;
      }
      visited[key] = steps + 1;
      stack.push_back({std::move(s2), steps + 1});
    }
  }
  res.visited = static_cast<long>(visited.size());
  return res;
}

std::string oracle_equiv_key(const OracleState& st) {
  std::string out;
  for (const auto& [name, h] : st.hosts) {
    std::vector<std::string> items;
    for (const Packet& p : h.fresh) items.push_back("new:" + packet_bytes(p));
    for (const Packet& p : h.deliver) items.push_back("dlv:" + packet_bytes(p));
    std::sort(items.begin(), items.end());
    out += "h:" + name + "[";
    for (const std::string& s : items) out += s + ";";
    out += "]\n";
  }
  for (const auto& [name, s] : st.switches) {
    out += "s:" + name + "|ft[";
    for (const FlowEntry& e : s.table.canonical()) out += entry_bytes(e) + ";";
    out += "]buf[";
    for (const auto& [p, port] : s.buffer)
      out += packet_bytes(p) + "@" + std::to_string(port) + ";";
    out += "]";
    std::vector<std::string> items;
    for (const auto& [p, port] : s.arrivals)
      items.push_back("arr:" + packet_bytes(p) + "@" + std::to_string(port));
    for (const FlowEntry& e : s.mods) items.push_back("mod:" + entry_bytes(e));
    for (const PacketHeader& ph : s.pktouts)
      items.push_back("out:" + header_bytes(ph));
    std::sort(items.begin(), items.end());
    out += "pend[";
    for (const std::string& i : items) out += i + ";";
    out += "]\n";
  }
  std::vector<std::string> ins;
  for (const PktInItem& i : st.pktins) ins.push_back(pktin_bytes(i));
  std::sort(ins.begin(), ins.end());
  out += "c|in[";
  for (const std::string& i : ins) out += i + ";";
  out += "]" + policy_bytes(st.policy) + "\n";
  return out;
}

std::string config_equiv_key(const Config& cfg) {
  const ScenarioContext& ctx = *cfg.ctx;
  std::string out;
  // Actors were created switches-then-hosts in sorted name order, so walking
  // hosts sorted matches the oracle's layout.
  for (const HostName& hname : ctx.topology.hosts()) {
    const Actor& a = cfg.actor(ctx.actor_for(hname));
    std::vector<std::string> items;
    for (const Task& t : a.tasks) {
      if (t.finished()) continue;
      if (t.method == Method::HostSendIn)
        items.push_back("new:" + packet_bytes(std::get<SendInLocals>(t.locals).p));
      else if (t.method == Method::HostHandlePacket)
        items.push_back("dlv:" +
                        packet_bytes(std::get<HandlePacketLocals>(t.locals).p));
    }
    std::sort(items.begin(), items.end());
    out += "h:" + hname + "[";
    for (const std::string& s : items) out += s + ";";
    out += "]\n";
  }
  for (const SwitchName& sname : ctx.topology.switches()) {
    const Actor& a = cfg.actor(ctx.actor_for(sname));
    const auto& heap = std::get<SwitchHeap>(a.heap);
    out += "s:" + sname + "|ft[";
    for (const FlowEntry& e : heap.table.canonical()) out += entry_bytes(e) + ";";
    out += "]buf[";
    for (const auto& [pid, pp] : heap.buffer)
      out += packet_bytes(pp.first) + "@" + std::to_string(pp.second) + ";";
    out += "]";
    std::vector<std::string> items;
    for (const Task& t : a.tasks) {
      if (t.finished()) continue;
      switch (t.method) {
        case Method::SwitchHandlePacket: {
          const auto& l = std::get<ShpLocals>(t.locals);
          items.push_back("arr:" + packet_bytes(l.p) + "@" +
                          std::to_string(l.port));
          break;
        }
        case Method::SwitchHandleMessage: {
          const auto& l = std::get<ShmLocals>(t.locals);
          items.push_back("mod:" +
                          entry_bytes({l.match, l.priority, l.action}));
          break;
        }
        case Method::SwitchSendOut: {
          const auto& l = std::get<SendOutLocals>(t.locals);
          auto it = heap.buffer.find(l.pid);
          if (it == heap.buffer.end())
            throw std::logic_error("equivalence: sendOut without buffered packet");
          items.push_back("out:" + header_bytes(it->second.first.header));
          break;
        }
        case Method::SwitchFlood:
          throw std::runtime_error(
              "equivalence does not cover flood delivery");
        default:
          throw std::logic_error("unexpected task on a switch actor");
      }
    }
    std::sort(items.begin(), items.end());
    out += "pend[";
    for (const std::string& i : items) out += i + ";";
    out += "]\n";
  }
  const Actor& ctrl = cfg.actor(ctx.controller);
  const auto& cheap = std::get<ControllerHeap>(ctrl.heap);
  std::vector<std::string> ins;
  for (const Task& t : ctrl.tasks) {
    if (t.finished()) continue;
    if (t.method != Method::ControlHandleMessage || t.cont != kContEntry)
      throw std::runtime_error(
          "equivalence requires barrier-free controller tasks");
    const auto& l = std::get<ChmLocals>(t.locals);
    ins.push_back(pktin_bytes({l.sid, l.port, l.pid, l.header}));
  }
  std::sort(ins.begin(), ins.end());
  out += "c|in[";
  for (const std::string& i : ins) out += i + ";";
  out += "]" + policy_bytes(cheap.policy) + "\n";
  return out;
}

bool equivalent(const OracleState& st, const Config& cfg) {
  return oracle_equiv_key(st) == config_equiv_key(cfg);
}

int default_oracle_bound(const ScenarioContext& ctx) {
  int packets = 0;
  for (const Injection& inj : ctx.injections) packets += inj.count;
  int switches = static_cast<int>(ctx.topology.switches().size());
  return std::max(40, 10 * std::max(1, packets) * std::max(1, switches));
}

}  // namespace sdnmc
