#pragma once

#include <string>
#include <vector>

#include "sdnmc/runtime.hpp"

namespace sdnmc {

// Violations only visible in a terminal configuration: policy-breaching
// deliveries and per-header flow-table shape problems. Which checks run is
// taken from cfg.ctx->monitors.
std::vector<Violation> final_state_violations(const Config& cfg);

// Offline check of the barrier discipline over one executed interleaving.
// For every activate..complete window of a switch barrier it checks that
// (a) every install pending at activation finished within the window,
// (b) no new install for that switch was spawned inside the window,
// (c) windows for the same switch never overlap.
struct BarrierCheckResult {
  std::vector<std::string> problems;
  int windows = 0;
};

BarrierCheckResult check_barrier_discipline(
    const std::vector<StepSummary>& trace, const ScenarioContext& ctx);

}  // namespace sdnmc
