#include "sdnmc/runtime.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sdnmc {

std::string to_string(const Move& m) {
  return "(" + std::to_string(m.actor) + "," + std::to_string(m.task) + ")";
}

std::string to_string(IndependenceLevel l) {
  switch (l) {
    case IndependenceLevel::Naive: return "naive";
    case IndependenceLevel::Actor: return "actor";
    case IndependenceLevel::Entry: return "entry";
    case IndependenceLevel::Context: return "context";
  }
  return "?";
}

IndependenceLevel independence_from_string(const std::string& s) {
  if (s == "naive") return IndependenceLevel::Naive;
  if (s == "actor") return IndependenceLevel::Actor;
  if (s == "entry") return IndependenceLevel::Entry;
  if (s == "context") return IndependenceLevel::Context;
  throw std::runtime_error("unknown independence level: " + s);
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string match_key(const PacketHeader& h, PortId port) {
  return h.src + ">" + h.dst + ">" + to_string(h.kind) + ">" +
         std::to_string(port);
}

Region flow_read(ActorId a, const PacketHeader& h, PortId port) {
  return {a, Region::Area::FlowKey, match_key(h, port), Region::kAnyPriority,
          false};
}

Region flow_write(ActorId a, const MatchField& m, Priority p) {
  return {a, Region::Area::FlowKey, match_key(m.header, m.port), p, true};
}

Region pid_region(ActorId a, Region::Area area, PacketId pid, bool write) {
  return {a, area, std::to_string(pid), Region::kAnyPriority, write};
}

Region ctrl_region(ActorId a, Region::Area area, const std::string& key,
                   bool write) {
  return {a, area, key, Region::kAnyPriority, write};
}

// Sorted-multiset insert; keeps commutative logs in canonical order so that
// appends from independent steps commute bit-wise.
template <typename T>
void sorted_insert(std::vector<T>& v, const T& x) {
  v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

struct StepCtx {
  Config& cfg;
  StepSummary& summary;

  ControllerHeap& ctrl_heap() {
    return std::get<ControllerHeap>(cfg.actor(cfg.ctx->controller).heap);
  }

  TaskId spawn(ActorId target, Method m, Locals locals) {
    TaskId id = cfg.next_task++;
    cfg.actor(target).tasks.push_back({id, m, std::move(locals), kContEntry});
    summary.spawned.push_back({target, id, m});
    return id;
  }

  void raise(ViolationKind kind, const std::string& where, PacketId pid,
             const std::string& detail) {
    Violation v{kind, where, pid, detail};
    sorted_insert(ctrl_heap().errors, v);
    summary.violations.push_back(v);
  }

  // Forward a packet according to a flow-table action.
  void dispatch(SwitchHeap& h, const Packet& p, const Action& act) {
    switch (act.kind) {
      case Action::Kind::ToHost:
        spawn(cfg.ctx->actor_for(act.target), Method::HostHandlePacket,
              HandlePacketLocals{p});
        break;
      case Action::Kind::ToSwitch:
        spawn(cfg.ctx->actor_for(act.target), Method::SwitchHandlePacket,
              ShpLocals{p, act.port});
        break;
      case Action::Kind::Drop:
        sorted_insert(h.dropped, p.id);
        break;
    }
  }
};

enum class Seg { Done, Park };

Seg run_send_in(StepCtx& s, Actor& actor, Task& t) {
  const auto& L = std::get<SendInLocals>(t.locals);
  const HostHeap& h = std::get<HostHeap>(actor.heap);
  s.spawn(s.cfg.ctx->actor_for(h.sw), Method::SwitchHandlePacket,
          ShpLocals{L.p, h.port});
  return Seg::Done;
}

Seg run_handle_packet(StepCtx&, Actor& actor, Task& t) {
  const auto& L = std::get<HandlePacketLocals>(t.locals);
  HostHeap& h = std::get<HostHeap>(actor.heap);
  sorted_insert(h.delivered, L.p);
  return Seg::Done;
}

Seg run_shp(StepCtx& s, Actor& actor, Task& t) {
  const auto& L = std::get<ShpLocals>(t.locals);
  SwitchHeap& h = std::get<SwitchHeap>(actor.heap);
  if (s.cfg.ctx->monitors.loop) {
    if (h.seen.count(L.p.id) != 0) {
      // Revisit: flag the loop and consume the packet.
      s.summary.regions.push_back(
          pid_region(actor.id, Region::Area::Seen, L.p.id, false));
      s.raise(ViolationKind::ForwardingLoop, h.name, L.p.id, "packet revisited");
      return Seg::Done;
    }
    h.seen.insert(L.p.id);
    s.summary.regions.push_back(
        pid_region(actor.id, Region::Area::Seen, L.p.id, true));
  }
  s.summary.regions.push_back(flow_read(actor.id, L.p.header, L.port));
  if (auto act = h.table.lookup(L.p.header, L.port)) {
    s.dispatch(h, L.p, *act);
    return Seg::Done;
  }
  if (h.buffer.count(L.p.id) != 0)
    throw std::logic_error("switch " + h.name + ": packet " +
                           std::to_string(L.p.id) + " buffered twice");
  h.buffer.emplace(L.p.id, std::make_pair(L.p, L.port));
  s.summary.regions.push_back(
      pid_region(actor.id, Region::Area::Buffer, L.p.id, true));
  ChmLocals req;
  req.sid = h.name;
  req.port = L.port;
  req.pid = L.p.id;
  req.header = L.p.header;
  s.spawn(s.cfg.ctx->controller, Method::ControlHandleMessage, std::move(req));
  return Seg::Done;
}

Seg run_send_out(StepCtx& s, Actor& actor, Task& t) {
  const auto& L = std::get<SendOutLocals>(t.locals);
  SwitchHeap& h = std::get<SwitchHeap>(actor.heap);
  auto it = h.buffer.find(L.pid);
  if (it == h.buffer.end())
    throw std::logic_error("switch " + h.name + ": sendOut for unbuffered packet " +
                           std::to_string(L.pid));
  auto [p, port] = it->second;
  h.buffer.erase(it);
  s.summary.regions.push_back(
      pid_region(actor.id, Region::Area::Buffer, L.pid, true));
  s.summary.regions.push_back(flow_read(actor.id, p.header, port));
  if (auto act = h.table.lookup(p.header, port)) {
    s.dispatch(h, p, *act);
  } else {
    sorted_insert(h.dropped, p.id);
  }
  return Seg::Done;
}

Seg run_shm(StepCtx& s, Actor& actor, Task& t) {
  const auto& L = std::get<ShmLocals>(t.locals);
  SwitchHeap& h = std::get<SwitchHeap>(actor.heap);
  s.summary.regions.push_back(flow_write(actor.id, L.match, L.priority));
  if (s.cfg.ctx->monitors.contradiction) {
    for (const FlowEntry& e : h.table.same_key_entries(L.match, L.priority)) {
      bool e_drops = e.action.kind == Action::Kind::Drop;
      bool n_drops = L.action.kind == Action::Kind::Drop;
      if (e_drops != n_drops) {
        s.raise(ViolationKind::ContradictoryRules, h.name, -1,
                to_string(L.match) + "@" + std::to_string(L.priority));
        break;
      }
    }
  }
  auto before = h.table.lookup(L.match.header, L.match.port);
  h.table.put({L.match, L.priority, L.action});
  auto after = h.table.lookup(L.match.header, L.match.port);
  s.summary.install =
      StepSummary::InstallFact{L.match, L.priority, L.action, before != after};
  return Seg::Done;
}

Seg run_flood(StepCtx& s, Actor& actor, Task& t) {
  const auto& L = std::get<FloodLocals>(t.locals);
  SwitchHeap& h = std::get<SwitchHeap>(actor.heap);
  auto it = h.buffer.find(L.pid);
  if (it == h.buffer.end())
    throw std::logic_error("switch " + h.name + ": flood for unbuffered packet " +
                           std::to_string(L.pid));
  auto [p, in_port] = it->second;
  h.buffer.erase(it);
  s.summary.regions.push_back(
      pid_region(actor.id, Region::Area::Buffer, L.pid, true));
  for (const auto& [port, peer] : s.cfg.ctx->topology.ports(h.name)) {
    if (port == in_port) continue;
    if (peer.is_host) {
      s.spawn(s.cfg.ctx->actor_for(peer.name), Method::HostHandlePacket,
              HandlePacketLocals{p});
    } else {
      s.spawn(s.cfg.ctx->actor_for(peer.name), Method::SwitchHandlePacket,
              ShpLocals{p, peer.far_port});
    }
  }
  return Seg::Done;
}

Seg run_chm(StepCtx& s, Actor& actor, Task& t) {
  auto& L = std::get<ChmLocals>(t.locals);
  const ScenarioContext& ctx = *s.cfg.ctx;
  ControllerHeap& heap = std::get<ControllerHeap>(actor.heap);

  if (t.cont == kContEntry) {
    ApplyResult r = apply_policy(ctx.policy, ctx.topology, heap.policy, L.sid,
                                 L.port, L.pid, L.header);
    L.directives = std::move(r.directives);
    L.flood = r.flood;
    for (const PolicyAccess& a : r.accesses)
      s.summary.regions.push_back(
          ctrl_region(actor.id, Region::Area::PolicyKey, a.key, a.write));
  }

  // Install loop: one switchHandleMessage per directive, in order. With
  // barriers every directive is fenced: wait for the target switch to be
  // barrier-free, send the install, activate the barrier, then hold it until
  // the install and every older pending control task on that switch have
  // run. The next directive is not sent before the fence closes, so the
  // installs take effect in directive order.
  bool resuming_await = (t.cont == kContReqAwaitFut);
  while (L.dir_idx < L.directives.size()) {
    const Directive& d = L.directives[L.dir_idx];
    if (!resuming_await) {
      if (ctx.barriers && !ctx.barrier_faulty) {
        s.summary.regions.push_back(
            ctrl_region(actor.id, Region::Area::BarrierOn, d.sw, false));
        if (heap.barrier_on.count(d.sw) != 0) {
          t.cont = kContInstallWait;
          return Seg::Park;
        }
      }
      TaskId f = s.spawn(ctx.actor_for(d.sw), Method::SwitchHandleMessage,
                         ShmLocals{d.match, d.priority, d.action});
      if (ctx.barriers) {
        heap.barrier_map[d.sw].push_back(f);
        s.summary.regions.push_back(
            ctrl_region(actor.id, Region::Area::BarrierMap, d.sw, true));
        heap.barrier_on.insert(d.sw);
        s.summary.regions.push_back(
            ctrl_region(actor.id, Region::Area::BarrierOn, d.sw, true));
        L.waiting_futs = std::move(heap.barrier_map[d.sw]);
        heap.barrier_map[d.sw].clear();
        L.fut_idx = 0;
        s.summary.barrier_events.push_back({true, d.sw});
      }
    }
    resuming_await = false;
    if (ctx.barriers) {
      while (L.fut_idx < L.waiting_futs.size()) {
        if (s.cfg.finished.count(L.waiting_futs[L.fut_idx]) == 0) {
          t.cont = kContReqAwaitFut;
          return Seg::Park;
        }
        ++L.fut_idx;
      }
      heap.barrier_on.erase(d.sw);
      s.summary.regions.push_back(
          ctrl_region(actor.id, Region::Area::BarrierOn, d.sw, true));
      s.summary.barrier_events.push_back({false, d.sw});
      L.waiting_futs.clear();
    }
    ++L.dir_idx;
  }

  if (ctx.barriers) {
    s.summary.regions.push_back(
        ctrl_region(actor.id, Region::Area::BarrierOn, L.sid, false));
    if (heap.barrier_on.count(L.sid) != 0) {
      t.cont = kContFinalWait;
      return Seg::Park;
    }
  }

  // Release the buffered packet at the requesting switch.
  Method m = L.flood ? Method::SwitchFlood : Method::SwitchSendOut;
  Locals locals = L.flood ? Locals{FloodLocals{L.pid}} : Locals{SendOutLocals{L.pid}};
  TaskId f = s.spawn(ctx.actor_for(L.sid), m, std::move(locals));
  if (ctx.barriers) {
    heap.barrier_map[L.sid].push_back(f);
    s.summary.regions.push_back(
        ctrl_region(actor.id, Region::Area::BarrierMap, L.sid, true));
  }
  return Seg::Done;
}

Seg run_segment(StepCtx& s, Actor& actor, Task& t) {
  switch (t.method) {
    case Method::HostSendIn: return run_send_in(s, actor, t);
    case Method::HostHandlePacket: return run_handle_packet(s, actor, t);
    case Method::SwitchHandlePacket: return run_shp(s, actor, t);
    case Method::SwitchSendOut: return run_send_out(s, actor, t);
    case Method::SwitchHandleMessage: return run_shm(s, actor, t);
    case Method::SwitchFlood: return run_flood(s, actor, t);
    case Method::ControlHandleMessage: return run_chm(s, actor, t);
  }
  throw std::logic_error("unknown method");
}

}  // namespace

Await await_of(const Config&, const Actor&, const Task& t) {
  switch (t.cont) {
    case kContEntry:
      return {Await::Kind::Ready, kNoTask, ""};
    case kContInstallWait: {
      const auto& L = std::get<ChmLocals>(t.locals);
      return {Await::Kind::BarrierFree, kNoTask, L.directives.at(L.dir_idx).sw};
    }
    case kContReqAwaitFut: {
      const auto& L = std::get<ChmLocals>(t.locals);
      return {Await::Kind::Future, L.waiting_futs.at(L.fut_idx), ""};
    }
    case kContFinalWait: {
      const auto& L = std::get<ChmLocals>(t.locals);
      return {Await::Kind::BarrierFree, kNoTask, L.sid};
    }
    default:
      throw std::logic_error("await_of on finished task");
  }
}

bool await_satisfied(const Config& cfg, const Await& w) {
  switch (w.kind) {
    case Await::Kind::Ready:
      return true;
    case Await::Kind::Future:
      return cfg.finished.count(w.fut) != 0;
    case Await::Kind::BarrierFree: {
      const auto& heap =
          std::get<ControllerHeap>(cfg.actor(cfg.ctx->controller).heap);
      return heap.barrier_on.count(w.sw) == 0;
    }
  }
  return false;
}

std::vector<Move> enabled_moves(const Config& cfg) {
  std::vector<Move> out;
  for (const Actor& a : cfg.actors)
    for (const Task& t : a.tasks) {
      if (t.finished()) continue;
      if (await_satisfied(cfg, await_of(cfg, a, t))) out.push_back({a.id, t.id});
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_complete(const Config& cfg) {
  for (const Actor& a : cfg.actors)
    for (const Task& t : a.tasks)
      if (!t.finished()) return false;
  return true;
}

bool detect_deadlock(const Config& cfg) {
  return !is_complete(cfg) && enabled_moves(cfg).empty();
}

Config macro_step(const Config& cfg, const Move& m, StepSummary* summary) {
  Config next = cfg;
  Actor& actor = next.actor(m.actor);
  Task* t = actor.find_task(m.task);
  if (t == nullptr)
    throw std::logic_error("macro_step: no task " + to_string(m));
  if (t->finished())
    throw std::logic_error("macro_step: task already finished " + to_string(m));
  if (!await_satisfied(next, await_of(next, actor, *t)))
    throw std::logic_error("macro_step: move not enabled " + to_string(m));

  StepSummary local;
  StepSummary& sum = summary != nullptr ? *summary : local;
  sum = StepSummary{};
  sum.move = m;
  sum.method = t->method;

  StepCtx sc{next, sum};
  // One macro-step runs the task serially up to its next release point; a
  // satisfied await passes through without releasing control.
  if (run_segment(sc, actor, *t) == Seg::Done) {
    t->cont = kContFinished;
    next.finished.insert(t->id);
    sum.task_finished = true;
  } else {
    Await w = await_of(next, actor, *t);
    if (w.kind == Await::Kind::Future) sum.parked_future = w.fut;
  }
  return next;
}

namespace {

void put(std::string& out, const std::string& s) {
  out += s;
  out += '|';
}

void put_int(std::string& out, long long v) {
  out += std::to_string(v);
  out += '|';
}

std::string header_bytes(const PacketHeader& h) {
  return h.src + ">" + h.dst + ">" + to_string(h.kind);
}

std::string packet_bytes(const Packet& p) {
  return std::to_string(p.id) + ":" + header_bytes(p.header);
}

std::string action_bytes(const Action& a) { return to_string(a); }

std::string entry_bytes(const FlowEntry& e) {
  return match_key(e.match.header, e.match.port) + "@" +
         std::to_string(e.priority) + "->" + action_bytes(e.action);
}

std::string directive_bytes(const Directive& d) {
  return d.sw + ":" + entry_bytes({d.match, d.priority, d.action});
}

std::string hex64(uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

// Locals serialization without task-id content; future references are
// appended separately (as colors during refinement and rendering).
std::string locals_base_bytes(const Locals& locals) {
  std::string out;
  if (const auto* l = std::get_if<SendInLocals>(&locals)) {
    out = "si:" + packet_bytes(l->p);
  } else if (const auto* l = std::get_if<HandlePacketLocals>(&locals)) {
    out = "hp:" + packet_bytes(l->p);
  } else if (const auto* l = std::get_if<ShpLocals>(&locals)) {
    out = "shp:" + packet_bytes(l->p) + "@" + std::to_string(l->port);
  } else if (const auto* l = std::get_if<SendOutLocals>(&locals)) {
    out = "so:" + std::to_string(l->pid);
  } else if (const auto* l = std::get_if<ShmLocals>(&locals)) {
    out = "shm:" + entry_bytes({l->match, l->priority, l->action});
  } else if (const auto* l = std::get_if<FloodLocals>(&locals)) {
    out = "fl:" + std::to_string(l->pid);
  } else if (const auto* l = std::get_if<ChmLocals>(&locals)) {
    out = "chm:" + l->sid + "@" + std::to_string(l->port) + ":" +
          std::to_string(l->pid) + ":" + header_bytes(l->header) + ":fl" +
          std::to_string(l->flood ? 1 : 0) + ":di" + std::to_string(l->dir_idx) +
          ":fi" + std::to_string(l->fut_idx) + ":d[";
    for (const Directive& d : l->directives) out += directive_bytes(d) + ";";
    out += "]";
  }
  return out;
}

const std::vector<TaskId>* future_refs(const Task& t) {
  if (const auto* l = std::get_if<ChmLocals>(&t.locals))
    return &l->waiting_futs;
  return nullptr;
}

// Color refinement over the task reference graph. Finished tasks color by
// (actor, method) only: their locals are dead and must not distinguish
// otherwise equal configurations.
std::map<TaskId, uint64_t> task_colors(const Config& cfg) {
  std::map<TaskId, uint64_t> color;
  std::map<TaskId, const Task*> by_id;
  for (const Actor& a : cfg.actors)
    for (const Task& t : a.tasks) {
      by_id[t.id] = &t;
      std::string base = std::to_string(a.id) + "#" + to_string(t.method);
      if (t.finished()) {
        base += "#FIN";
      } else {
        base += "#" + std::to_string(t.cont) + "#" + locals_base_bytes(t.locals);
      }
      color[t.id] = fnv1a64(base);
    }
  for (int round = 0; round < 4; ++round) {
    std::map<TaskId, uint64_t> next;
    for (const auto& [id, t] : by_id) {
      std::string acc = hex64(color.at(id));
      if (const auto* refs = future_refs(*t))
        for (TaskId f : *refs) acc += "," + hex64(color.at(f));
      next[id] = fnv1a64(acc);
    }
    color = std::move(next);
  }
  return color;
}

}  // namespace

std::string canonical_serialize(const Config& cfg) {
  std::map<TaskId, uint64_t> color = task_colors(cfg);
  std::string out;
  for (const Actor& a : cfg.actors) {
    put_int(out, a.id);
    if (const auto* h = std::get_if<HostHeap>(&a.heap)) {
      put(out, "host:" + h->name + "@" + h->sw + ":" + std::to_string(h->port));
      std::string d = "dl[";
      for (const Packet& p : h->delivered) d += packet_bytes(p) + ";";
      put(out, d + "]");
    } else if (const auto* sw = std::get_if<SwitchHeap>(&a.heap)) {
      put(out, "switch:" + sw->name);
      std::string tb = "ft[";
      for (const FlowEntry& e : sw->table.canonical()) tb += entry_bytes(e) + ";";
      put(out, tb + "]");
      std::string bf = "buf[";
      for (const auto& [pid, pp] : sw->buffer)
        bf += packet_bytes(pp.first) + "@" + std::to_string(pp.second) + ";";
      put(out, bf + "]");
      std::string sn = "seen[";
      for (PacketId p : sw->seen) sn += std::to_string(p) + ";";
      put(out, sn + "]");
      std::string dr = "drop[";
      for (PacketId p : sw->dropped) dr += std::to_string(p) + ";";
      put(out, dr + "]");
    } else if (const auto* c = std::get_if<ControllerHeap>(&a.heap)) {
      put(out, "ctrl");
      std::string ps = "lb[";
      for (const auto& [pid, n] : c->policy.lb_attempts)
        ps += std::to_string(pid) + "=" + std::to_string(n) + ";";
      ps += "]lrn[";
      for (const auto& [host, at] : c->policy.learned)
        ps += host + "=" + at.first + ":" + std::to_string(at.second) + ";";
      ps += "]tr[";
      for (const HostName& h : c->policy.trusted) ps += h + ";";
      put(out, ps + "]");
      std::string bo = "bon[";
      for (const SwitchName& s : c->barrier_on) bo += s + ";";
      put(out, bo + "]");
      std::string bm = "bmap[";
      for (const auto& [s, futs] : c->barrier_map) {
        // Registrations of finished tasks are dead bookkeeping: a window
        // awaiting them passes straight through, so they must not
        // distinguish otherwise identical states.
        std::string refs;
        for (TaskId f : futs)
          if (cfg.finished.count(f) == 0) refs += hex64(color.at(f)) + ";";
        if (refs.empty()) continue;
        bm += s + "=(" + refs + ")";
      }
      put(out, bm + "]");
      std::string er = "err[";
      for (const Violation& v : c->errors)
        er += to_string(v.kind) + "@" + v.where + ":" + std::to_string(v.pid) +
              ":" + v.detail + ";";
      put(out, er + "]");
    }
    std::vector<std::string> recs;
    for (const Task& t : a.tasks) {
      std::string r;
      if (t.finished()) {
        r = "F:" + to_string(t.method);
      } else {
        r = "T:" + to_string(t.method) + ":" + std::to_string(t.cont) + ":" +
            locals_base_bytes(t.locals);
        if (const auto* refs = future_refs(t)) {
          r += ":futs[";
          for (TaskId f : *refs) r += hex64(color.at(f)) + ";";
          r += "]";
        }
      }
      recs.push_back(std::move(r));
    }
    std::sort(recs.begin(), recs.end());
    for (const std::string& r : recs) put(out, r);
    out += '\n';
  }
  return out;
}

uint64_t canonical_fingerprint(const Config& cfg) {
  return fnv1a64(canonical_serialize(cfg));
}

namespace {

bool flow_area(Region::Area a) {
  return a == Region::Area::FlowTable || a == Region::Area::FlowKey;
}

bool regions_overlap(const Region& a, const Region& b, IndependenceLevel l) {
  if (a.actor != b.actor) return false;
  if (!a.write && !b.write) return false;
  if (flow_area(a.area) && flow_area(b.area)) {
    if (l == IndependenceLevel::Actor) return true;
    if (a.area == Region::Area::FlowTable || b.area == Region::Area::FlowTable)
      return true;
    if (a.key != b.key) return false;
    // Same match: writes to distinct priorities commute (the table's normal
    // form orders them; lookup picks the priority winner either way).
    if (a.write && b.write) return a.prio == b.prio;
    return true;
  }
  if (a.area != b.area) return false;
  return a.key == b.key;
}

// Context-sensitive exception: an install that did not change any lookup
// result for its match commutes with a pure reader of that match. Only valid
// when both steps were evaluated against the same pre-state.
bool benign_invisible_install(const StepSummary& w, const StepSummary& r) {
  if (!w.install || w.install->lookup_changed) return false;
  std::string key = match_key(w.install->match.header, w.install->match.port);
  for (const Region& reg : r.regions)
    if (reg.area == Region::Area::FlowKey && !reg.write && reg.key == key)
      return true;
  return false;
}

// One step parked awaiting a future that the other completed. Running the
// completer first would let the parked segment pass through its await and
// stop at a later release point, so the orders do not commute. This couples
// steps across actors: a controller segment can park on a switch task.
bool boundary_coupled(const StepSummary& parked, const StepSummary& fin) {
  return fin.task_finished && parked.parked_future == fin.move.task;
}

}  // namespace

bool dependent(const StepSummary& a, const StepSummary& b, IndependenceLevel l) {
  if (boundary_coupled(a, b) || boundary_coupled(b, a)) return true;
  if (l == IndependenceLevel::Naive) return a.move.actor == b.move.actor;
  if (a.move.actor != b.move.actor) return false;
  if (a.move.task == b.move.task) return true;
  if (l == IndependenceLevel::Context && a.install && b.install) {
    // Identical installs commute: the duplicate collapses in the normal form.
    if (a.install->match == b.install->match &&
        a.install->priority == b.install->priority &&
        a.install->action == b.install->action)
      return false;
  }
  bool same_state = a.serial >= 0 && a.serial == b.serial;
  if (l == IndependenceLevel::Context && same_state) {
    if (benign_invisible_install(a, b) && !b.install) return false;
    if (benign_invisible_install(b, a) && !a.install) return false;
  }
  for (const Region& ra : a.regions)
    for (const Region& rb : b.regions)
      if (regions_overlap(ra, rb, l)) return true;
  return false;
}

std::vector<std::string> summarize_final_state(const Config& cfg) {
  std::vector<std::string> lines;
  for (const Actor& a : cfg.actors) {
    std::ostringstream os;
    if (const auto* h = std::get_if<HostHeap>(&a.heap)) {
      if (h->delivered.empty()) continue;
      os << "host " << h->name << ": delivered=[";
      for (const Packet& p : h->delivered)
        os << "p" << p.id << "(" << p.header.src << "->" << p.header.dst << ","
           << to_string(p.header.kind) << ")";
      os << "]";
    } else if (const auto* sw = std::get_if<SwitchHeap>(&a.heap)) {
      auto can = sw->table.canonical();
      if (can.empty() && sw->buffer.empty() && sw->dropped.empty()) continue;
      os << "switch " << sw->name << ":";
      if (!can.empty()) {
        os << " table=[";
        for (const FlowEntry& e : can)
          os << to_string(e.match) << "@" << e.priority << "->"
             << to_string(e.action) << ";";
        os << "]";
      }
      if (!sw->buffer.empty()) {
        os << " buffered=[";
        for (const auto& [pid, pp] : sw->buffer) os << "p" << pid << ";";
        os << "]";
      }
      if (!sw->dropped.empty()) {
        os << " dropped=[";
        for (PacketId p : sw->dropped) os << "p" << p << ";";
        os << "]";
      }
    } else if (const auto* c = std::get_if<ControllerHeap>(&a.heap)) {
      if (c->errors.empty()) continue;
      os << "controller: errors=[";
      for (const Violation& v : c->errors)
        os << to_string(v.kind) << "@" << v.where
           << (v.pid >= 0 ? ":p" + std::to_string(v.pid) : "") << ";";
      os << "]";
    }
    std::string line = os.str();
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace sdnmc
