#include "chanlin/twosat.hpp"

#include <algorithm>

namespace chanlin {

TwoSatResult solve_2sat(const TwoSatFormula& f) {
  TwoSatResult r;
  if (f.contradiction) return r;
  const int nodes = 2 * f.num_vars;

  // CSR implication graph: (a or b) gives not-a -> b and not-b -> a
  std::vector<int> start(nodes + 1, 0), adj(2 * f.clauses.size());
  for (auto [a, b] : f.clauses) {
    ++start[negate(a) + 1];
    ++start[negate(b) + 1];
  }
  for (int i = 0; i < nodes; ++i) start[i + 1] += start[i];
  std::vector<int> fill(start.begin(), start.end() - 1);
  for (auto [a, b] : f.clauses) {
    adj[fill[negate(a)]++] = b;
    adj[fill[negate(b)]++] = a;
  }

  // iterative Tarjan; components numbered in reverse topological order
  std::vector<int> index(nodes, -1), low(nodes, 0), comp(nodes, -1), stk, edge_it(nodes, 0);
  std::vector<int> call;
  int counter = 0, ncomp = 0;
  for (int root = 0; root < nodes; ++root) {
    if (index[root] != -1) continue;
    call.push_back(root);
    index[root] = low[root] = counter++;
    stk.push_back(root);
    edge_it[root] = start[root];
    while (!call.empty()) {
      int v = call.back();
      if (edge_it[v] < start[v + 1]) {
        int w = adj[edge_it[v]++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stk.push_back(w);
          edge_it[w] = start[w];
          call.push_back(w);
        } else if (comp[w] == -1) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == index[v]) {
        int w;
        do {
          w = stk.back();
          stk.pop_back();
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
    }
  }

  r.assignment.assign(f.num_vars, false);
  for (int v = 0; v < f.num_vars; ++v) {
    if (comp[pos_lit(v)] == comp[neg_lit(v)]) {
      r.assignment.clear();
      return r;
    }
    r.assignment[v] = comp[pos_lit(v)] < comp[neg_lit(v)];
  }
  r.satisfiable = true;
  return r;
}

bool satisfies(const TwoSatFormula& f, const std::vector<bool>& assignment) {
  if (f.contradiction) return false;
  auto val = [&](int lit) { return assignment[lit >> 1] != static_cast<bool>(lit & 1); };
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](auto c) { return val(c[0]) || val(c[1]); });
}

}  // namespace chanlin
