#pragma once

#include <cstdint>
#include <string>

namespace sdnmc {

// Dense integer identities. Actor and task ids are allocated by the runtime
// (creation order); packet ids are allocated by the scenario builder and are
// part of the observable state.
using ActorId = int;
using TaskId = int;
using PacketId = int;
using PortId = int;
using Priority = int;

using SwitchName = std::string;
using HostName = std::string;

inline constexpr TaskId kNoTask = -1;

// Reserved destination name that load-balancing policies resolve to a replica.
inline const std::string kVipName = "VIP";

inline bool is_vip(const std::string& dst) { return dst == kVipName; }

}  // namespace sdnmc
