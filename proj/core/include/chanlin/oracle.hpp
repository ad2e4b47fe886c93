#pragma once

#include <cstddef>

#include "chanlin/instance.hpp"
#include "chanlin/verdict.hpp"

namespace chanlin {

inline constexpr int kBruteForceBound = 12;

// Exhaustive interleaving search. Uses rf when the instance carries one,
// otherwise values. Witness is the first one in thread-token order.
Verdict brute_force(const Instance& inst, int max_events = kBruteForceBound);

}  // namespace chanlin
