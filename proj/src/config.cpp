#include "sdnmc/config.hpp"

#include <stdexcept>

namespace sdnmc {

std::string to_string(Method m) {
  switch (m) {
    case Method::HostSendIn: return "sendIn";
    case Method::HostHandlePacket: return "handlePacket";
    case Method::SwitchHandlePacket: return "switchHandlePacket";
    case Method::SwitchSendOut: return "sendOut";
    case Method::SwitchHandleMessage: return "switchHandleMessage";
    case Method::SwitchFlood: return "flood";
    case Method::ControlHandleMessage: return "controlHandleMessage";
  }
  return "?";
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::ForwardingLoop: return "forwarding_loop";
    case ViolationKind::ContradictoryRules: return "contradictory_rules";
    case ViolationKind::UnsafeDelivery: return "unsafe_delivery";
    case ViolationKind::InconsistentTables: return "inconsistent_tables";
  }
  return "?";
}

const std::string& Actor::name() const {
  if (const auto* h = std::get_if<HostHeap>(&heap)) return h->name;
  if (const auto* s = std::get_if<SwitchHeap>(&heap)) return s->name;
  static const std::string ctrl = "controller";
  return ctrl;
}

Task* Actor::find_task(TaskId t) {
  for (Task& task : tasks)
    if (task.id == t) return &task;
  return nullptr;
}

const Task* Actor::find_task(TaskId t) const {
  for (const Task& task : tasks)
    if (task.id == t) return &task;
  return nullptr;
}

ActorId ScenarioContext::actor_for(const std::string& name) const {
  auto it = actor_of.find(name);
  if (it == actor_of.end())
    throw std::runtime_error("unknown actor name: " + name);
  return it->second;
}

}  // namespace sdnmc
