#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chanlin/instance.hpp"
#include "chanlin/twosat.hpp"
#include "chanlin/verdict.hpp"

namespace chanlin {

struct SendReceiveGraph {
  bool valid = true;
  std::string reason;                         // set when !valid
  std::vector<std::pair<int, int>> nodes;     // (send, receive) event indices
  std::vector<std::pair<int, int>> edges;     // node indices, sorted
};

SendReceiveGraph build_send_receive_graph(const Instance& inst);
Verdict solve_sync(const Instance& inst);

struct PairEncoding {
  TwoSatFormula formula;
  std::vector<std::pair<int, int>> var_pairs;  // variable v means event first precedes event second
};

// Instance must have at most two threads, rf, and channels that are
// synchronous, capacity-one, or never full.
PairEncoding encode_2sat(const Instance& inst);

// Events of threads a and b on channels both of them use.
struct Projection {
  Instance instance;
  std::vector<int> original;  // projected index -> index in the source instance
};
Projection project(const Instance& inst, int a, int b);

Verdict solve_acyclic(const Instance& inst);

}  // namespace chanlin
