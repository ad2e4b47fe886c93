#pragma once

#include <cstddef>
#include <string>

#include "chanlin/instance.hpp"

namespace chanlin {

struct SmtStats {
  std::size_t position_vars = 0;
  std::size_t counter_vars = 0;
  std::size_t assertions = 0;
  std::size_t saturation_edges = 0;
};

// Quantifier-free integer encoding of the rf problem; satisfiable iff the
// instance is consistent with its rf. Throws Refusal for an instance with
// receives but no rf.
std::string emit_smtlib(const Instance& inst, bool with_saturation = false, SmtStats* stats = nullptr);

enum class SolverAnswer { sat, unsat, unknown, error };
const char* to_string(SolverAnswer a);

struct SolverResult {
  SolverAnswer answer = SolverAnswer::error;
  std::string output;
};

// "{}" in the command is replaced by the path; otherwise the path is appended.
SolverResult run_external_solver(const std::string& path, const std::string& command);

}  // namespace chanlin
