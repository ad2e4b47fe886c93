#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace chanlin {

struct Verdict {
  bool consistent = false;
  std::vector<int> witness;  // event indices, present iff consistent
  std::size_t explored = 0;  // frontier nodes, interleaving prefixes, or graph nodes
  std::size_t clauses = 0;   // 2SAT clauses, when the solver used any
  std::string algorithm;
  std::string reason;        // why inconsistent, when known
};

}  // namespace chanlin
