#pragma once

#include <memory>

#include "sdnmc/config.hpp"

namespace sdnmc {

// Builds the shared immutable context: assigns actor ids (controller first,
// then switches sorted by name, then hosts sorted by name) and validates the
// scenario against the topology.
std::shared_ptr<const ScenarioContext> make_context(
    std::string name, Topology topology, PolicySpec policy, bool barriers,
    MonitorSet monitors, std::vector<Injection> injections,
    bool barrier_faulty = false);

// Initial configuration: empty heaps, one sendIn task per injected packet.
// Packet ids are assigned in injection order starting from 0.
Config build_initial_config(std::shared_ptr<const ScenarioContext> ctx);

}  // namespace sdnmc
