#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "chanlin/instance.hpp"
#include "chanlin/saturation.hpp"
#include "chanlin/verdict.hpp"

namespace chanlin {

// Node of the frontier graph. Queue entries are send event indices when
// searching with rf, and value indices when searching by values.
struct FrontierNode {
  std::vector<std::uint32_t> counts;
  std::vector<std::deque<int>> queues;
  int pending = -1;  // pending synchronous send, -1 for none

  bool operator==(const FrontierNode&) const = default;
};

std::string node_key(const FrontierNode& node);
FrontierNode source_node(const Instance& inst);

// Reasons an rf instance cannot be consistent regardless of interleaving.
std::optional<std::string> validate_rf(const Instance& inst);

Verdict solve_vch(const Instance& inst);
Verdict solve_vchrf(const Instance& inst);
Verdict solve_vch_saturated(const Instance& inst);
Verdict solve_vchrf_saturated(const Instance& inst);

// Search with an optional precomputed order used for pruning.
Verdict frontier_search(const Instance& inst, bool use_rf, const SaturatedOrder* order);

}  // namespace chanlin
