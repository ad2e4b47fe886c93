#pragma once

#include <array>
#include <vector>

namespace chanlin {

// Literal encoding: 2*v is v, 2*v+1 is not-v.
inline int pos_lit(int v) { return 2 * v; }
inline int neg_lit(int v) { return 2 * v + 1; }
inline int negate(int lit) { return lit ^ 1; }

struct TwoSatFormula {
  int num_vars = 0;
  std::vector<std::array<int, 2>> clauses;  // unit clauses repeat the literal
  bool contradiction = false;               // an empty clause was derived

  void add(int a, int b) { clauses.push_back({a, b}); }
};

struct TwoSatResult {
  bool satisfiable = false;
  std::vector<bool> assignment;
};

// Implication graph + strongly connected components, linear time.
TwoSatResult solve_2sat(const TwoSatFormula& f);

bool satisfies(const TwoSatFormula& f, const std::vector<bool>& assignment);

}  // namespace chanlin
