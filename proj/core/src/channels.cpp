#include "chanlin/channels.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace chanlin {

std::string to_string(const ChannelClass& c) {
  switch (c.kind) {
    case ChannelClass::sync: return "sync";
    case ChannelClass::bounded: return "bounded(" + std::to_string(c.bound) + ")";
    case ChannelClass::unbounded: return "unbounded";
  }
  return "?";
}

std::vector<ChannelClass> classify_channels(const Instance& inst) {
  std::vector<Cap> sends(inst.m(), 0);
  for (const auto& e : inst.events)
    if (e.op == Op::snd) ++sends[e.channel];
  std::vector<ChannelClass> out;
  for (int c = 0; c < inst.m(); ++c) {
    Cap cap = inst.caps[c];
    if (cap == 0) out.push_back({ChannelClass::sync, 0});
    else if (cap == kInf || sends[c] <= cap) out.push_back({ChannelClass::unbounded, 0});
    else out.push_back({ChannelClass::bounded, cap});
  }
  return out;
}

Topology communication_topology(const Instance& inst) {
  Topology topo;
  topo.nodes = inst.t();
  std::vector<std::set<int>> users(inst.m());
  for (const auto& e : inst.events) users[e.channel].insert(e.thread);

  std::set<std::pair<int, int>> edges;
  for (int c = 0; c < inst.m(); ++c) {
    topo.channel_threads.emplace_back(users[c].begin(), users[c].end());
    if (users[c].size() == 1) topo.single_thread_channels.push_back(c);
    for (int a : users[c])
      for (int b : users[c])
        if (a < b) edges.emplace(a, b);
  }
  topo.edges.assign(edges.begin(), edges.end());

  // union-find: an edge joining an existing component closes a cycle
  std::vector<int> parent(topo.nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : topo.edges) {
    int ra = find(a), rb = find(b);
    if (ra == rb) topo.acyclic = false;
    else parent[ra] = rb;
  }
  return topo;
}

}  // namespace chanlin
