#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chanlin/instance.hpp"

namespace chanlin {

struct ChannelClass {
  enum Kind { sync, bounded, unbounded } kind;
  Cap bound = 0;  // meaningful for bounded

  bool operator==(const ChannelClass&) const = default;
};

std::string to_string(const ChannelClass& c);

std::vector<ChannelClass> classify_channels(const Instance& inst);

struct Topology {
  int nodes = 0;                             // thread indices 0..nodes-1
  std::vector<std::pair<int, int>> edges;    // (a,b) with a<b, sorted
  bool acyclic = true;
  std::vector<int> single_thread_channels;   // touched by exactly one thread
  std::vector<std::vector<int>> channel_threads;
};

Topology communication_topology(const Instance& inst);

}  // namespace chanlin
