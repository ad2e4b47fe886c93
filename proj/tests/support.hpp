#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chanlin/generators.hpp"
#include "chanlin/instance.hpp"
#include "chanlin/twosat.hpp"

namespace chanlin::support {

std::string instance_path(const std::string& name);

struct ArbitraryParams {
  int max_events = 8;
  int max_threads = 3;
  int max_channels = 3;
  std::vector<Cap> cap_menu{0, 1, 2, kInf};
  int value_count = 2;
};

// Unconstrained random instance with values and no rf; usually inconsistent.
Instance random_arbitrary(std::mt19937_64& rng, const ArbitraryParams& p);

// Drops values and attaches a random same-channel injective rf.
Instance random_rf(std::mt19937_64& rng, const Instance& inst);

// One instance of the oracle-equivalence suite for a seed: a mix of
// simulated positives, mutated positives, and arbitrary instances.
struct SuiteCase {
  Instance values;  // values, no rf
  Instance rf;      // rf, no values
};
SuiteCase suite_case(std::uint64_t seed);

// Independent ground truth for the source problems.
bool has_hamiltonian_cycle(const Graph& g);
bool is_satisfiable(const CnfFormula& f);
bool is_one_in_three_satisfiable(const CnfFormula& f);
bool has_orthogonal_pair(const OvInstance& ov);
bool is_sequentially_consistent(const VscReadInstance& v);
bool twosat_truth_table(const TwoSatFormula& f);

Graph random_digraph(std::mt19937_64& rng, int max_nodes);
CnfFormula random_3cnf(std::mt19937_64& rng, int vars, int clauses);
OvInstance random_ov(std::mt19937_64& rng, int max_n, int max_d);
VscReadInstance random_vsc_read(std::mt19937_64& rng, int max_events);
TwoSatFormula random_2sat(std::mt19937_64& rng, int max_vars);

}  // namespace chanlin::support
