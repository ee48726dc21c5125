#include "sdnmc/topology.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace sdnmc {

void Topology::finalize() {
  ports_.clear();
  attachment_.clear();
  auto claim = [&](const SwitchName& sw, PortId port, Peer peer) {
    auto [it, fresh] = ports_[sw].emplace(port, std::move(peer));
    if (!fresh)
      throw std::runtime_error("topology: duplicate port " +
                               std::to_string(port) + " at switch " + sw);
  };
  for (const ShLink& l : sh_links_) {
    claim(l.sw, l.port, Peer{true, l.host, 0});
    auto [it, fresh] = attachment_.emplace(l.host, std::make_pair(l.sw, l.port));
    if (!fresh)
      throw std::runtime_error("topology: host attached twice: " + l.host);
  }
  for (const SsLink& l : ss_links_) {
    if (l.a == l.b)
      throw std::runtime_error("topology: self-link at switch " + l.a);
    claim(l.a, l.port_a, Peer{false, l.b, l.port_b});
    claim(l.b, l.port_b, Peer{false, l.a, l.port_a});
  }
  for (const auto& [host, at] : attachment_)
    if (ports_.count(host) != 0)
      throw std::runtime_error("topology: name used as both host and switch: " +
                               host);
}

std::vector<SwitchName> Topology::switches() const {
  std::vector<SwitchName> out;
  for (const auto& [name, _] : ports_) out.push_back(name);
  return out;
}

std::vector<HostName> Topology::hosts() const {
  std::vector<HostName> out;
  for (const auto& [name, _] : attachment_) out.push_back(name);
  return out;
}

std::pair<SwitchName, PortId> Topology::host_attachment(const HostName& h) const {
  auto it = attachment_.find(h);
  if (it == attachment_.end())
    throw std::runtime_error("topology: unknown host " + h);
  return it->second;
}

const std::map<PortId, Topology::Peer>& Topology::ports(const SwitchName& s) const {
  auto it = ports_.find(s);
  if (it == ports_.end())
    throw std::runtime_error("topology: unknown switch " + s);
  return it->second;
}

std::vector<SwitchName> Topology::neighbor_switches(const SwitchName& s) const {
  std::set<SwitchName> seen;
  for (const auto& [port, peer] : ports(s))
    if (!peer.is_host) seen.insert(peer.name);
  return {seen.begin(), seen.end()};
}

bool Topology::adjacent(const SwitchName& s, const SwitchName& t) const {
  for (const auto& [port, peer] : ports(s))
    if (!peer.is_host && peer.name == t) return true;
  return false;
}

std::optional<std::vector<PathHop>> shortest_path(const Topology& top,
                                                  const SwitchName& from,
                                                  PortId entry_port,
                                                  const HostName& to_host) {
  if (!top.has_host(to_host)) return std::nullopt;
  const SwitchName goal = top.host_attachment(to_host).first;

  // BFS over switches. Neighbors are expanded in ascending (name, far port)
  // order so equal-length ties resolve toward the smallest neighbor name.
  std::map<SwitchName, std::pair<SwitchName, PortId>> pred;  // node -> (prev, ingress)
  std::deque<SwitchName> queue{from};
  std::set<SwitchName> visited{from};
  while (!queue.empty() && visited.count(goal) == 0) {
    SwitchName cur = queue.front();
    queue.pop_front();
    std::vector<std::pair<SwitchName, PortId>> next;  // (neighbor, its ingress)
    for (const auto& [port, peer] : top.ports(cur))
      if (!peer.is_host) next.emplace_back(peer.name, peer.far_port);
    std::sort(next.begin(), next.end());
    for (const auto& [nb, ingress] : next) {
      if (visited.count(nb)) continue;
      visited.insert(nb);
      pred[nb] = {cur, ingress};
      queue.push_back(nb);
    }
  }
  if (visited.count(goal) == 0) return std::nullopt;

  std::vector<PathHop> hops;
  SwitchName cur = goal;
  while (cur != from) {
    auto [prev, ingress] = pred.at(cur);
    hops.push_back({cur, ingress});
    cur = prev;
  }
  hops.push_back({from, entry_port});
  std::reverse(hops.begin(), hops.end());
  return hops;
}

}  // namespace sdnmc
