#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chanlin/instance.hpp"

namespace chanlin {

// Transitive order over events stored as per-thread clocks: for each event,
// the latest predecessor and earliest successor position in every thread.
class SaturatedOrder {
 public:
  bool cyclic() const { return cyclic_; }
  bool before(int a, int b) const;
  int pred_pos(int e, int tau) const { return pred_[idx(e, tau)]; }
  int succ_pos(int e, int tau) const { return succ_[idx(e, tau)]; }  // thread size when none
  bool ready(int e, std::span<const std::uint32_t> counts) const;
  std::size_t added_edges() const { return added_; }
  std::size_t rounds() const { return rounds_; }

 private:
  friend SaturatedOrder saturate(const Instance& inst);
  std::size_t idx(int e, int tau) const { return static_cast<std::size_t>(e) * t_ + tau; }

  int t_ = 0;
  std::vector<int> thr_, pos_;
  bool cyclic_ = false;
  std::vector<int> pred_, succ_;
  std::size_t added_ = 0;
  std::size_t rounds_ = 0;
};

SaturatedOrder saturate(const Instance& inst);

}  // namespace chanlin
