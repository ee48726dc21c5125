#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "sdnmc/ids.hpp"

namespace sdnmc {

enum class PacketKind { Ssh, Other };

std::string to_string(PacketKind k);
PacketKind packet_kind_from_string(const std::string& s);

struct PacketHeader {
  HostName src;
  std::string dst;  // host name or the VIP sentinel
  PacketKind kind = PacketKind::Other;

  auto operator<=>(const PacketHeader&) const = default;
};

struct Packet {
  PacketId id = 0;
  PacketHeader header;

  auto operator<=>(const Packet&) const = default;
};

// OpenFlow-style exact match on (header, ingress port).
struct MatchField {
  PacketHeader header;
  PortId port = 0;

  auto operator<=>(const MatchField&) const = default;
};

struct Action {
  enum class Kind { ToHost, ToSwitch, Drop };
  Kind kind = Kind::Drop;
  std::string target;  // host name (ToHost) or switch name (ToSwitch)
  PortId port = 0;     // ToSwitch: ingress port at the target switch

  auto operator<=>(const Action&) const = default;

  static Action to_host(HostName h) { return {Kind::ToHost, std::move(h), 0}; }
  static Action to_switch(SwitchName s, PortId ingress) {
    return {Kind::ToSwitch, std::move(s), ingress};
  }
  static Action drop() { return {Kind::Drop, "", 0}; }
};

std::string to_string(const Action& a);
std::string to_string(const MatchField& m);

struct FlowEntry {
  MatchField match;
  Priority priority = 0;
  Action action;

  auto operator<=>(const FlowEntry&) const = default;
};

// Flow table as an insertion-ordered list. Duplicate matches are allowed;
// lookup resolves by exact match, then highest priority, then most recent
// insertion. put never overwrites.
class FlowTable {
 public:
  void put(const FlowEntry& e) { entries_.push_back(e); }

  // Exact match on (header, port); nullopt on miss.
  std::optional<Action> lookup(const PacketHeader& h, PortId port) const;

  const std::vector<FlowEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Entries already present under the same (match, priority) key.
  std::vector<FlowEntry> same_key_entries(const MatchField& m, Priority p) const;

  // Observational normal form: stable sort by (match, priority) keeping the
  // relative order of same-key entries (it decides last-wins ties), then
  // collapse runs of exact duplicates to one copy. Two tables with the same
  // canonical form answer every future lookup identically.
  std::vector<FlowEntry> canonical() const;

  auto operator<=>(const FlowTable&) const = default;

 private:
  std::vector<FlowEntry> entries_;
};

}  // namespace sdnmc
