#include "chanlin/frontier.hpp"

#include <unordered_set>

namespace chanlin {

namespace {

void put32(std::string& out, std::uint32_t x) {
  char b[4] = {static_cast<char>(x), static_cast<char>(x >> 8), static_cast<char>(x >> 16),
               static_cast<char>(x >> 24)};
  out.append(b, 4);
}

void key_into(const FrontierNode& node, std::string& out) {
  out.clear();
  for (auto c : node.counts) put32(out, c);
  for (const auto& q : node.queues) {
    put32(out, static_cast<std::uint32_t>(q.size()));
    for (int x : q) put32(out, static_cast<std::uint32_t>(x));
  }
  put32(out, static_cast<std::uint32_t>(node.pending + 1));
}

struct Undo {
  int thread;
  enum { none, popped, pushed, set_pending, cleared_pending } what;
  int data;
};

class Search {
 public:
  Search(const Instance& inst, bool use_rf, const SaturatedOrder* order)
      : inst_(inst), use_rf_(use_rf), order_(order), node_(source_node(inst)) {}

  Verdict run() {
    Verdict v;
    std::unordered_set<std::string> visited;
    std::string key;
    key_into(node_, key);
    visited.insert(key);
    v.explored = 1;

    struct Frame {
      int next_thread;
      Undo undo;
    };
    std::vector<Frame> stack{{0, {-1, Undo::none, 0}}};
    std::vector<int> path;
    path.reserve(inst_.n());

    while (!stack.empty()) {
      if (is_sink()) {
        v.consistent = true;
        v.witness = path;
        return v;
      }
      Frame& f = stack.back();
      if (f.next_thread >= inst_.t()) {
        Undo u = f.undo;
        stack.pop_back();
        if (u.thread >= 0) {
          revert(u);
          path.pop_back();
        }
        continue;
      }
      int tau = f.next_thread++;
      Undo u;
      if (!fire(tau, u)) continue;
      key_into(node_, key);
      if (!visited.insert(key).second) {
        revert(u);
        continue;
      }
      ++v.explored;
      path.push_back(inst_.at(tau, node_.counts[tau] - 1));
      stack.push_back({0, u});
    }
    v.consistent = false;
    return v;
  }

 private:
  bool is_sink() const {
    if (node_.pending != -1) return false;
    for (int tau = 0; tau < inst_.t(); ++tau)
      if (static_cast<int>(node_.counts[tau]) != inst_.thread_size(tau)) return false;
    return true;
  }

  int token(int e) const { return use_rf_ ? e : inst_.events[e].value; }
  bool matches(int front, int r) const { return use_rf_ ? inst_.mate[r] == front : front == inst_.events[r].value; }

  bool fire(int tau, Undo& u) {
    int c = static_cast<int>(node_.counts[tau]);
    if (c == inst_.thread_size(tau)) return false;
    int e = inst_.at(tau, c);
    if (order_ && !order_->ready(e, node_.counts)) return false;
    const Event& ev = inst_.events[e];
    u.thread = tau;

    if (node_.pending != -1) {
      const Event& s = inst_.events[node_.pending];
      if (ev.op != Op::rcv || ev.channel != s.channel || ev.thread == s.thread) return false;
      if (!matches(token(node_.pending), e)) return false;
      u.what = Undo::cleared_pending;
      u.data = node_.pending;
      node_.pending = -1;
    } else if (inst_.is_sync(ev.channel)) {
      if (ev.op == Op::rcv) return false;
      u.what = Undo::set_pending;
      node_.pending = e;
    } else {
      auto& q = node_.queues[ev.channel];
      if (ev.op == Op::snd) {
        if (q.size() >= inst_.caps[ev.channel]) return false;
        q.push_back(token(e));
        u.what = Undo::pushed;
      } else {
        if (q.empty() || !matches(q.front(), e)) return false;
        u.what = Undo::popped;
        u.data = q.front();
        q.pop_front();
      }
    }
    ++node_.counts[tau];
    return true;
  }

  void revert(const Undo& u) {
    int e = inst_.at(u.thread, --node_.counts[u.thread]);
    const Event& ev = inst_.events[e];
    switch (u.what) {
      case Undo::cleared_pending: node_.pending = u.data; break;
      case Undo::set_pending: node_.pending = -1; break;
      case Undo::pushed: node_.queues[ev.channel].pop_back(); break;
      case Undo::popped: node_.queues[ev.channel].push_front(u.data); break;
      case Undo::none: break;
    }
  }

  const Instance& inst_;
  bool use_rf_;
  const SaturatedOrder* order_;
  FrontierNode node_;
};

}  // namespace

std::string node_key(const FrontierNode& node) {
  std::string out;
  key_into(node, out);
  return out;
}

FrontierNode source_node(const Instance& inst) {
  FrontierNode node;
  node.counts.assign(inst.t(), 0);
  node.queues.resize(inst.m());
  return node;
}

std::optional<std::string> validate_rf(const Instance& inst) {
  for (int e = 0; e < inst.n(); ++e) {
    const Event& ev = inst.events[e];
    int s = inst.mate[e];
    if (ev.op == Op::rcv && s < 0) return "receive " + std::to_string(ev.id) + " has no rf source";
    if (s >= 0 && ev.op == Op::snd && inst.is_sync(ev.channel) && inst.events[s].thread == ev.thread)
      return "synchronous rf pair " + std::to_string(ev.id) + " -> " + std::to_string(inst.events[s].id) +
             " within one thread";
  }
  return std::nullopt;
}

Verdict frontier_search(const Instance& inst, bool use_rf, const SaturatedOrder* order) {
  return Search(inst, use_rf, order).run();
}

Verdict solve_vch(const Instance& inst) {
  if (!inst.has_all_values()) throw ValidationError("value-based search needs a value on every event");
  Verdict v = frontier_search(inst, false, nullptr);
  v.algorithm = "frontier";
  return v;
}

Verdict solve_vchrf(const Instance& inst) {
  Verdict v;
  if (auto why = validate_rf(inst)) {
    v.reason = *why;
  } else {
    v = frontier_search(inst, true, nullptr);
  }
  v.algorithm = "frontier-rf";
  return v;
}

Verdict solve_vch_saturated(const Instance& inst) { return solve_vch(inst); }

Verdict solve_vchrf_saturated(const Instance& inst) {
  Verdict v;
  v.algorithm = "frontier-rf+saturation";
  if (auto why = validate_rf(inst)) {
    v.reason = *why;
    return v;
  }
  SaturatedOrder order = saturate(inst);
  if (order.cyclic()) {
    v.reason = "saturated order is cyclic";
    return v;
  }
  v = frontier_search(inst, true, &order);
  v.algorithm = "frontier-rf+saturation";
  return v;
}

}  // namespace chanlin
