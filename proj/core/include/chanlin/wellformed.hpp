#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chanlin/instance.hpp"

namespace chanlin {

enum class ViolationKind { capacity, sync, value, rf };

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::size_t position;  // 1-based
  std::string message;
};

// Incremental left-to-right well-formedness check. In rf mode, every receive
// must consume exactly its rf source.
class TraceChecker {
 public:
  TraceChecker(const Instance& inst, bool check_rf);

  std::optional<Violation> feed(int e);
  std::optional<Violation> finish() const;
  std::size_t size() const { return fed_; }

 private:
  const Instance* inst_;
  bool check_rf_;
  std::vector<std::deque<int>> queues_;
  int pending_ = -1;
  std::size_t pending_pos_ = 0;
  std::size_t fed_ = 0;
};

std::optional<Violation> check_well_formed(const Instance& inst, std::span<const int> order,
                                           bool check_rf = false);
inline std::optional<Violation> check_well_formed(const Instance& trace_inst) {
  return check_well_formed(trace_inst, trace_inst.trace, false);
}

// i-th send matched to i-th receive per channel.
std::vector<int> derive_rf(const Instance& inst, std::span<const int> order);
Instance derive_abstract(const Instance& trace_inst);

// Empty when order is a valid concretization (po respected, well-formed,
// and derived rf equal to the instance rf when one is present).
std::optional<std::string> verify_witness(const Instance& inst, std::span<const int> order);

}  // namespace chanlin
