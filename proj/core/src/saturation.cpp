#include "chanlin/saturation.hpp"

#include <algorithm>

#include "chanlin/channels.hpp"

namespace chanlin {

bool SaturatedOrder::before(int a, int b) const {
  if (a == b) return false;
  return pred_[idx(b, thr_[a])] >= pos_[a];
}

bool SaturatedOrder::ready(int e, std::span<const std::uint32_t> counts) const {
  const int* p = &pred_[idx(e, 0)];
  for (int tau = 0; tau < t_; ++tau)
    if (p[tau] >= static_cast<int>(counts[tau])) return false;
  return true;
}

namespace {

struct Graph {
  const Instance& inst;
  std::vector<std::vector<int>> extra_out, extra_in;

  explicit Graph(const Instance& i) : inst(i), extra_out(i.n()), extra_in(i.n()) {}

  template <class F>
  void for_in(int e, F&& f) const {
    if (int p = inst.pred(e); p >= 0) f(p);
    if (inst.events[e].op == Op::rcv && inst.mate[e] >= 0) f(inst.mate[e]);
    for (int x : extra_in[e]) f(x);
  }
  template <class F>
  void for_out(int e, F&& f) const {
    if (int s = inst.succ(e); s >= 0) f(s);
    if (inst.events[e].op == Op::snd && inst.mate[e] >= 0) f(inst.mate[e]);
    for (int x : extra_out[e]) f(x);
  }

  // Kahn; empty result when the graph has a cycle.
  std::vector<int> topo() const {
    int n = inst.n();
    std::vector<int> indeg(n, 0), order;
    order.reserve(n);
    for (int e = 0; e < n; ++e) for_in(e, [&](int) { ++indeg[e]; });
    for (int e = 0; e < n; ++e)
      if (indeg[e] == 0) order.push_back(e);
    for (std::size_t h = 0; h < order.size(); ++h)
      for_out(order[h], [&](int x) {
        if (--indeg[x] == 0) order.push_back(x);
      });
    if (static_cast<int>(order.size()) != n) order.clear();
    return order;
  }
};

// Latest event in list (sorted by position) whose position is <= p.
int latest_at_most(const std::vector<int>& list, const Instance& inst, int p) {
  auto it = std::upper_bound(list.begin(), list.end(), p,
                             [&](int pos, int e) { return pos < inst.events[e].pos; });
  return it == list.begin() ? -1 : *std::prev(it);
}

}  // namespace

SaturatedOrder saturate(const Instance& inst) {
  SaturatedOrder so;
  const int n = inst.n(), t = inst.t(), m = inst.m();
  so.t_ = t;
  so.thr_.resize(n);
  so.pos_.resize(n);
  for (int e = 0; e < n; ++e) {
    so.thr_[e] = inst.events[e].thread;
    so.pos_[e] = inst.events[e].pos;
  }

  auto classes = classify_channels(inst);
  auto slot = [&](int tau, int ch) { return static_cast<std::size_t>(tau) * m + ch; };
  std::vector<std::vector<int>> sends(static_cast<std::size_t>(t) * m), matched_sends(sends.size()),
      rcvs(sends.size());
  std::vector<int> unmatched_sends;
  for (int e = 0; e < n; ++e) {
    const Event& ev = inst.events[e];
    auto s = slot(ev.thread, ev.channel);
    if (ev.op == Op::snd) {
      sends[s].push_back(e);
      if (inst.mate[e] >= 0) matched_sends[s].push_back(e);
      else unmatched_sends.push_back(e);
    } else if (inst.mate[e] >= 0) {
      rcvs[s].push_back(e);
    }
  }

  Graph g(inst);
  for (;;) {
    ++so.rounds_;
    auto order = g.topo();
    if (static_cast<int>(order.size()) != n) {
      so.cyclic_ = true;
      break;
    }

    so.pred_.assign(static_cast<std::size_t>(n) * t, -1);
    for (int e : order) {
      int* pe = &so.pred_[so.idx(e, 0)];
      g.for_in(e, [&](int p) {
        const int* pp = &so.pred_[so.idx(p, 0)];
        for (int tau = 0; tau < t; ++tau) pe[tau] = std::max(pe[tau], pp[tau]);
        pe[so.thr_[p]] = std::max(pe[so.thr_[p]], so.pos_[p]);
      });
    }
    so.succ_.assign(static_cast<std::size_t>(n) * t, 0);
    for (int e = 0; e < n; ++e)
      for (int tau = 0; tau < t; ++tau) so.succ_[so.idx(e, tau)] = inst.thread_size(tau);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int e = *it;
      int* se = &so.succ_[so.idx(e, 0)];
      g.for_out(e, [&](int s) {
        const int* ss = &so.succ_[so.idx(s, 0)];
        for (int tau = 0; tau < t; ++tau) se[tau] = std::min(se[tau], ss[tau]);
        se[so.thr_[s]] = std::min(se[so.thr_[s]], so.pos_[s]);
      });
    }

    std::size_t added = 0;
    bool self_loop = false;
    auto add = [&](int a, int b) {
      if (a == b) {
        self_loop = true;
        return;
      }
      if (so.before(a, b)) return;
      g.extra_out[a].push_back(b);
      g.extra_in[b].push_back(a);
      ++added;
    };

    for (int e = 0; e < n && !self_loop; ++e) {
      const Event& ev = inst.events[e];
      int mate = inst.mate[e];
      const auto& cls = classes[ev.channel];
      for (int tau = 0; tau < t; ++tau) {
        int p = so.pred_[so.idx(e, tau)];
        if (ev.op == Op::snd && mate >= 0) {
          // (1) s1 before s2 forces r1 before r2
          int s1 = latest_at_most(matched_sends[slot(tau, ev.channel)], inst, p);
          if (s1 >= 0 && s1 != e) add(inst.mate[s1], mate);
        }
        if (ev.op == Op::rcv && mate >= 0) {
          // (1) r1 before r2 forces s1 before s2
          int r1 = latest_at_most(rcvs[slot(tau, ev.channel)], inst, p);
          if (r1 >= 0 && r1 != e) add(inst.mate[r1], mate);
        }
        if (cls.kind == ChannelClass::sync && ev.op == Op::snd && mate >= 0) {
          // (3) whatever precedes r precedes s; whatever follows s follows r
          int pr = so.pred_[so.idx(mate, tau)];
          if (pr >= 0) {
            int x = inst.at(tau, pr);
            if (x != e) add(x, e);
          }
          int ss = so.succ_[so.idx(e, tau)];
          if (ss < inst.thread_size(tau)) {
            int x = inst.at(tau, ss);
            if (x != mate) add(mate, x);
          }
        }
        if (cls.kind == ChannelClass::bounded && cls.bound == 1 && ev.op == Op::snd) {
          // (4) capacity one: s1 before s2 forces rf(s1) before s2
          int s1 = latest_at_most(sends[slot(tau, ev.channel)], inst, p);
          if (s1 >= 0 && s1 != e && inst.mate[s1] >= 0) add(inst.mate[s1], e);
        }
      }
    }
    // (2) matched sends precede unmatched sends on the same channel
    for (int u : unmatched_sends) {
      int ch = inst.events[u].channel;
      for (int tau = 0; tau < t; ++tau) {
        const auto& ms = matched_sends[slot(tau, ch)];
        if (!ms.empty()) add(ms.back(), u);
      }
    }

    if (self_loop) {
      so.cyclic_ = true;
      break;
    }
    so.added_ += added;
    if (added == 0) break;
  }
  return so;
}

}  // namespace chanlin
