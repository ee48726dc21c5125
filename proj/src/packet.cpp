#include "sdnmc/packet.hpp"

#include <algorithm>
#include <stdexcept>

namespace sdnmc {

std::string to_string(PacketKind k) {
  return k == PacketKind::Ssh ? "SSH" : "OTHER";
}

PacketKind packet_kind_from_string(const std::string& s) {
  if (s == "SSH") return PacketKind::Ssh;
  if (s == "OTHER") return PacketKind::Other;
  throw std::runtime_error("unknown packet kind: " + s);
}

std::string to_string(const Action& a) {
  switch (a.kind) {
    case Action::Kind::ToHost:
      return "host(" + a.target + ")";
    case Action::Kind::ToSwitch:
      return "switch(" + a.target + ",in=" + std::to_string(a.port) + ")";
    case Action::Kind::Drop:
      return "drop";
  }
  return "?";
}

std::string to_string(const MatchField& m) {
  return "(" + m.header.src + "->" + m.header.dst + "," +
         to_string(m.header.kind) + ",port=" + std::to_string(m.port) + ")";
}

std::optional<Action> FlowTable::lookup(const PacketHeader& h, PortId port) const {
  const FlowEntry* best = nullptr;
  for (const FlowEntry& e : entries_) {
    if (e.match.header != h || e.match.port != port) continue;
    // >= favors the most recent insertion among equal priorities.
    if (best == nullptr || e.priority >= best->priority) best = &e;
  }
  if (best == nullptr) return std::nullopt;
  return best->action;
}

std::vector<FlowEntry> FlowTable::same_key_entries(const MatchField& m,
                                                   Priority p) const {
  std::vector<FlowEntry> out;
  for (const FlowEntry& e : entries_)
    if (e.match == m && e.priority == p) out.push_back(e);
  return out;
}

std::vector<FlowEntry> FlowTable::canonical() const {
  std::vector<FlowEntry> out = entries_;
  std::stable_sort(out.begin(), out.end(),
                   [](const FlowEntry& a, const FlowEntry& b) {
                     if (a.match != b.match) return a.match < b.match;
                     return a.priority < b.priority;
                   });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace sdnmc
