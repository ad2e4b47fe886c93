#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chanlin/instance.hpp"

namespace chanlin {

struct Graph {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;
};

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // DIMACS-style signed literals
};

struct OvInstance {
  int dim = 0;
  std::vector<std::vector<int>> a, b;  // 0/1 entries
};

struct MemEvent {
  std::uint64_t id = 0;
  std::string thread;
  bool write = false;
  std::string reg;
};

struct VscReadInstance {
  std::vector<MemEvent> events;                          // line order is po per thread
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rf;  // (write, read)
};

Graph parse_digraph(std::istream& in);
CnfFormula parse_dimacs(std::istream& in);
OvInstance parse_ov(std::istream& in);
VscReadInstance parse_vsc_read(std::istream& in);

Instance from_hamiltonian(const Graph& g);
Instance from_one_in_three_two_threads(const CnfFormula& f);
Instance from_3sat_t3_m5(const CnfFormula& f);
Instance from_orthogonal_vectors(const OvInstance& ov);
Instance from_vsc_read(const VscReadInstance& v);

// Sequential synchronous handshakes passed round-robin between threads.
Instance sync_pipeline(int events, int threads);

struct RandomParams {
  int events = 10;
  int threads = 2;
  int channels = 1;
  std::vector<Cap> cap_menu{0, 1, 2, kInf};
  int value_count = 2;
  std::uint64_t seed = 1;
};

struct PositiveInstance {
  Instance instance;         // abstract, with rf and values
  std::vector<int> witness;  // the simulated trace
};

PositiveInstance random_positive(const RandomParams& p);

struct Mutation {
  Instance instance;
  int rounds = 0;
  int applied = 0;
  int skipped = 0;
};

int default_mutation_rounds(int events);
Mutation mutate_rf(const Instance& inst, std::uint64_t seed, std::optional<int> rounds = std::nullopt);

}  // namespace chanlin
