#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sdnmc/crosscheck.hpp"
#include "sdnmc/explore.hpp"
#include "sdnmc/scenario.hpp"

namespace sdnmc {

std::string fingerprint_hex(uint64_t fp);

// JSON views of results, stable across runs of the same scenario.
nlohmann::json trace_json(const std::vector<Move>& trace);
nlohmann::json run_report(const Scenario& s, const ExplorationOptions& opts,
                          const ExplorationResult& r);
nlohmann::json crosscheck_report(const Scenario& s, const CrosscheckResult& r);

}  // namespace sdnmc
