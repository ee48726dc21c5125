#include "sdnmc/build.hpp"

#include <stdexcept>

namespace sdnmc {

std::shared_ptr<const ScenarioContext> make_context(
    std::string name, Topology topology, PolicySpec policy, bool barriers,
    MonitorSet monitors, std::vector<Injection> injections,
    bool barrier_faulty) {
  auto ctx = std::make_shared<ScenarioContext>();
  ctx->name = std::move(name);
  ctx->topology = std::move(topology);
  ctx->policy = std::move(policy);
  ctx->barriers = barriers;
  ctx->monitors = monitors;
  ctx->barrier_faulty = barrier_faulty;
  ctx->injections = std::move(injections);

  ctx->controller = 0;
  ctx->actor_names.push_back("controller");
  for (const SwitchName& s : ctx->topology.switches()) {
    ctx->actor_of[s] = static_cast<ActorId>(ctx->actor_names.size());
    ctx->actor_names.push_back(s);
  }
  for (const HostName& h : ctx->topology.hosts()) {
    ctx->actor_of[h] = static_cast<ActorId>(ctx->actor_names.size());
    ctx->actor_names.push_back(h);
  }

  for (const Injection& inj : ctx->injections) {
    if (!ctx->topology.has_host(inj.host))
      throw std::runtime_error("injection at unknown host: " + inj.host);
    if (inj.count < 1)
      throw std::runtime_error("injection count must be positive");
    if (!is_vip(inj.header.dst) && !ctx->topology.has_host(inj.header.dst))
      throw std::runtime_error("injection to unknown destination: " +
                               inj.header.dst);
  }
  for (const HostName& r : ctx->policy.replicas)
    if (!ctx->topology.has_host(r))
      throw std::runtime_error("unknown replica host: " + r);
  for (const HostName& h : ctx->policy.authenticated)
    if (!ctx->topology.has_host(h))
      throw std::runtime_error("unknown authenticated host: " + h);
  return ctx;
}

Config build_initial_config(std::shared_ptr<const ScenarioContext> ctx) {
  Config cfg;
  cfg.ctx = ctx;
  cfg.actors.push_back(
      {ctx->controller, ActorKind::Controller, ControllerHeap{}, {}});
  for (const SwitchName& s : ctx->topology.switches())
    cfg.actors.push_back(
        {ctx->actor_for(s), ActorKind::Switch, SwitchHeap{s, {}, {}, {}, {}}, {}});
  for (const HostName& h : ctx->topology.hosts()) {
    auto [sw, port] = ctx->topology.host_attachment(h);
    cfg.actors.push_back(
        {ctx->actor_for(h), ActorKind::Host, HostHeap{h, sw, port, {}}, {}});
  }

  PacketId next_pid = 0;
  for (const Injection& inj : ctx->injections)
    for (int i = 0; i < inj.count; ++i) {
      Packet p{next_pid++, inj.header};
      ActorId host = ctx->actor_for(inj.host);
      TaskId id = cfg.next_task++;
      cfg.actor(host).tasks.push_back(
          {id, Method::HostSendIn, SendInLocals{p}, kContEntry});
    }
  return cfg;
}

}  // namespace sdnmc
