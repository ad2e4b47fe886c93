#include "chanlin/oracle.hpp"

#include <string>
#include <vector>

#include "chanlin/wellformed.hpp"

namespace chanlin {

namespace {

struct Explorer {
  const Instance& inst;
  std::vector<int> next;
  std::vector<int> path;
  std::size_t visited = 0;

  bool dfs(const TraceChecker& checker) {
    ++visited;
    if (static_cast<int>(path.size()) == inst.n()) return !checker.finish().has_value();
    for (int tau = 0; tau < inst.t(); ++tau) {
      if (next[tau] == inst.thread_size(tau)) continue;
      int e = inst.at(tau, next[tau]);
      TraceChecker child = checker;
      if (child.feed(e)) continue;
      ++next[tau];
      path.push_back(e);
      if (dfs(child)) return true;
      path.pop_back();
      --next[tau];
    }
    return false;
  }
};

}  // namespace

Verdict brute_force(const Instance& inst, int max_events) {
  if (inst.n() > max_events)
    throw Refusal("brute force bound exceeded: " + std::to_string(inst.n()) + " > " + std::to_string(max_events));
  Explorer x{inst, std::vector<int>(inst.t(), 0), {}, 0};
  Verdict v;
  v.algorithm = "brute";
  v.consistent = x.dfs(TraceChecker(inst, inst.has_rf));
  v.explored = x.visited;
  if (v.consistent) v.witness = x.path;
  return v;
}

}  // namespace chanlin
