#include "chanlin/fastpath.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "chanlin/channels.hpp"
#include "chanlin/frontier.hpp"
#include "chanlin/wellformed.hpp"

namespace chanlin {

namespace {

// Kahn's algorithm, smallest ready node first. Returns fewer than n nodes on a cycle.
std::vector<int> kahn(int n, const std::vector<std::vector<int>>& out) {
  std::vector<int> indeg(n, 0), order;
  for (const auto& row : out)
    for (int w : row) ++indeg[w];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : out[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  return order;
}

}  // namespace

SendReceiveGraph build_send_receive_graph(const Instance& inst) {
  for (int c = 0; c < inst.m(); ++c)
    if (!inst.is_sync(c)) throw Refusal("send-receive graph needs every channel synchronous");
  SendReceiveGraph g;
  std::vector<int> node_of(inst.n(), -1);
  for (int e = 0; e < inst.n(); ++e) {
    const Event& ev = inst.events[e];
    int mate = inst.mate[e];
    if (mate < 0) {
      g.valid = false;
      g.reason = std::string(ev.op == Op::snd ? "send " : "receive ") + std::to_string(ev.id) + " is unmatched";
      return g;
    }
    if (inst.events[mate].thread == ev.thread) {
      g.valid = false;
      g.reason = "synchronous rf pair within thread " + inst.threads[ev.thread];
      return g;
    }
    if (ev.op == Op::snd) {
      node_of[e] = node_of[mate] = static_cast<int>(g.nodes.size());
      g.nodes.emplace_back(e, mate);
    }
  }
  for (int e = 0; e < inst.n(); ++e)
    if (int p = inst.pred(e); p >= 0) g.edges.emplace_back(node_of[p], node_of[e]);
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

Verdict solve_sync(const Instance& inst) {
  if (!inst.has_rf && inst.n() > 0) throw Refusal("synchronous solver needs rf");
  Verdict v;
  v.algorithm = "sync";
  SendReceiveGraph g = build_send_receive_graph(inst);
  if (!g.valid) {
    v.reason = g.reason;
    return v;
  }
  int k = static_cast<int>(g.nodes.size());
  std::vector<std::vector<int>> out(k);
  for (auto [a, b] : g.edges) out[a].push_back(b);
  auto order = kahn(k, out);
  v.explored = k;
  if (static_cast<int>(order.size()) != k) {
    v.reason = "send-receive graph has a cycle";
    return v;
  }
  v.consistent = true;
  for (int x : order) {
    v.witness.push_back(g.nodes[x].first);
    v.witness.push_back(g.nodes[x].second);
  }
  return v;
}

namespace {

class PairEncoder {
 public:
  explicit PairEncoder(const Instance& inst) : inst_(inst) {
    na_ = inst.t() > 0 ? inst.thread_size(0) : 0;
    nb_ = inst.t() > 1 ? inst.thread_size(1) : 0;
    enc_.formula.num_vars = 2 * na_ * nb_;
    enc_.var_pairs.resize(enc_.formula.num_vars);
    for (int e = 0; e < na_; ++e)
      for (int f = na_; f < na_ + nb_; ++f) {
        enc_.var_pairs[var(e, f)] = {e, f};
        enc_.var_pairs[var(f, e)] = {f, e};
      }
  }

  PairEncoding run() {
    auto classes = classify_channels(inst_);
    for (const auto& c : classes)
      if (c.kind == ChannelClass::bounded && c.bound != 1)
        throw Refusal("2SAT encoding supports capacities 0, 1, and never-full channels only");

    // exactly one orientation per cross pair, plus transitivity along po
    for (int e = 0; e < na_; ++e)
      for (int f = na_; f < na_ + nb_; ++f) {
        clause(neg(x(e, f)), neg(x(f, e)));
        clause(x(e, f), x(f, e));
      }
    for (int e = 0; e < inst_.n(); ++e)
      for (int f = 0; f < inst_.n(); ++f) {
        if (inst_.events[e].thread == inst_.events[f].thread) continue;
        if (int p = inst_.pred(e); p >= 0) imply(x(e, f), x(p, f));
        if (int s = inst_.succ(f); s >= 0) imply(x(e, f), x(e, s));
      }

    std::vector<std::vector<int>> matched(inst_.m()), unmatched(inst_.m()), sends(inst_.m());
    for (int e = 0; e < inst_.n(); ++e) {
      const Event& ev = inst_.events[e];
      if (ev.op == Op::rcv) {
        if (inst_.mate[e] < 0) contradiction();
        else clause1(x(inst_.mate[e], e));
        continue;
      }
      sends[ev.channel].push_back(e);
      (inst_.mate[e] >= 0 ? matched : unmatched)[ev.channel].push_back(e);
    }

    for (int c = 0; c < inst_.m(); ++c) {
      for (int s : matched[c])
        for (int u : unmatched[c]) clause1(x(s, u));
      for (std::size_t i = 0; i < matched[c].size(); ++i)
        for (std::size_t j = i + 1; j < matched[c].size(); ++j) {
          int s1 = matched[c][i], s2 = matched[c][j];
          int r1 = inst_.mate[s1], r2 = inst_.mate[s2];
          imply(x(s1, s2), x(r1, r2));
          imply(x(r1, r2), x(s1, s2));
        }
      const auto& cls = classes[c];
      if (cls.kind == ChannelClass::bounded) {
        if (unmatched[c].size() > 1) contradiction();
        for (int s : matched[c])
          for (int other : sends[c])
            if (other != s) imply(x(s, other), x(inst_.mate[s], other));
      }
      if (cls.kind == ChannelClass::sync) {
        if (!unmatched[c].empty()) contradiction();
        for (int s : matched[c]) {
          int r = inst_.mate[s];
          if (inst_.events[s].thread == inst_.events[r].thread) {
            contradiction();
            continue;
          }
          if (int s2 = inst_.succ(s); s2 >= 0) clause1(x(r, s2));
          if (int r0 = inst_.pred(r); r0 >= 0) clause1(x(r0, s));
        }
      }
    }
    return std::move(enc_);
  }

 private:
  // A term is a literal or a constant fixed by program order.
  struct Term {
    int lit;    // valid when konst < 0
    int konst;  // -1 literal, 0 false, 1 true
  };

  int var(int e, int f) const {
    return e < na_ ? e * nb_ + (f - na_) : na_ * nb_ + (e - na_) * na_ + f;
  }
  Term x(int e, int f) const {
    if (e == f) return {0, 0};
    if (inst_.events[e].thread == inst_.events[f].thread) return {0, inst_.events[e].pos < inst_.events[f].pos ? 1 : 0};
    return {pos_lit(var(e, f)), -1};
  }
  static Term neg(Term a) { return a.konst < 0 ? Term{negate(a.lit), -1} : Term{0, 1 - a.konst}; }

  void clause(Term a, Term b) {
    if (a.konst == 1 || b.konst == 1) return;
    if (a.konst == 0 && b.konst == 0) return contradiction();
    if (a.konst == 0) return enc_.formula.add(b.lit, b.lit);
    if (b.konst == 0) return enc_.formula.add(a.lit, a.lit);
    enc_.formula.add(a.lit, b.lit);
  }
  void clause1(Term a) { clause(a, a); }
  void imply(Term a, Term b) { clause(neg(a), b); }
  void contradiction() { enc_.formula.contradiction = true; }

  const Instance& inst_;
  int na_ = 0, nb_ = 0;
  PairEncoding enc_;
};

}  // namespace

PairEncoding encode_2sat(const Instance& inst) {
  if (inst.t() > 2) throw Refusal("2SAT encoding takes at most two threads");
  return PairEncoder(inst).run();
}

Projection project(const Instance& inst, int a, int b) {
  std::vector<char> used_a(inst.m(), 0), used_b(inst.m(), 0);
  for (const auto& e : inst.events) {
    if (e.thread == a) used_a[e.channel] = 1;
    if (e.thread == b) used_b[e.channel] = 1;
  }
  InstanceBuilder builder;
  for (int c = 0; c < inst.m(); ++c)
    if (used_a[c] && used_b[c]) builder.channel(inst.channels[c], inst.caps[c]);
  Projection p;
  for (int tau : {std::min(a, b), std::max(a, b)})
    for (int i = inst.thread_begin[tau]; i < inst.thread_begin[tau + 1]; ++i) {
      const Event& e = inst.events[i];
      if (!(used_a[e.channel] && used_b[e.channel])) continue;
      std::optional<std::string> value;
      if (e.value >= 0) value = inst.values[e.value];
      builder.event(e.id, inst.threads[tau], e.op, inst.channels[e.channel], value);
      p.original.push_back(i);
    }
  for (int i : p.original)
    if (inst.events[i].op == Op::snd && inst.mate[i] >= 0) builder.rf(inst.events[i].id, inst.events[inst.mate[i]].id);
  p.instance = builder.build();
  return p;
}

Verdict solve_acyclic(const Instance& inst) {
  auto topo = communication_topology(inst);
  if (!topo.acyclic) throw Refusal("communication topology has a cycle");
  for (const auto& c : classify_channels(inst))
    if (c.kind == ChannelClass::bounded && c.bound != 1)
      throw Refusal("acyclic solver supports capacities 0, 1, and never-full channels only");
  if (!inst.has_rf && inst.n() > 0) throw Refusal("acyclic solver needs rf");

  Verdict v;
  v.algorithm = "acyclic";
  if (auto why = validate_rf(inst)) {
    v.reason = *why;
    return v;
  }

  for (int c : topo.single_thread_channels) {
    TraceChecker checker(inst, true);
    int tau = topo.channel_threads[c][0];
    for (int i = inst.thread_begin[tau]; i < inst.thread_begin[tau + 1]; ++i)
      if (inst.events[i].channel == c)
        if (auto bad = checker.feed(i)) {
          v.reason = "channel " + inst.channels[c] + " fails on its only thread";
          return v;
        }
    if (checker.finish()) {
      v.reason = "channel " + inst.channels[c] + " fails on its only thread";
      return v;
    }
  }

  std::vector<std::vector<int>> out(inst.n());
  for (auto [a, b] : topo.edges) {
    Projection p = project(inst, a, b);
    PairEncoding enc = encode_2sat(p.instance);
    v.clauses += enc.formula.clauses.size();
    auto sol = solve_2sat(enc.formula);
    if (!sol.satisfiable) {
      v.reason = "threads " + inst.threads[a] + " and " + inst.threads[b] + " admit no joint order";
      return v;
    }
    for (int var = 0; var < enc.formula.num_vars; ++var)
      if (sol.assignment[var]) {
        auto [e, f] = enc.var_pairs[var];
        out[p.original[e]].push_back(p.original[f]);
      }
  }

  // contract synchronous pairs into their send so they stay adjacent
  std::vector<int> rep(inst.n());
  for (int e = 0; e < inst.n(); ++e) {
    const Event& ev = inst.events[e];
    rep[e] = (ev.op == Op::rcv && inst.is_sync(ev.channel)) ? inst.mate[e] : e;
  }
  std::vector<std::vector<int>> graph(inst.n());
  auto link = [&](int a, int b) {
    if (rep[a] != rep[b]) graph[rep[a]].push_back(rep[b]);
  };
  for (int e = 0; e < inst.n(); ++e) {
    if (int p = inst.pred(e); p >= 0) link(p, e);
    for (int f : out[e]) link(e, f);
  }
  auto order = kahn(inst.n(), graph);
  for (int e : order) {
    if (rep[e] != e) continue;
    v.witness.push_back(e);
    if (inst.is_sync(inst.events[e].channel) && inst.mate[e] >= 0) v.witness.push_back(inst.mate[e]);
  }
  if (auto bad = verify_witness(inst, v.witness))
    throw std::logic_error("acyclic witness assembly failed: " + *bad);
  v.consistent = true;
  return v;
}

}  // namespace chanlin
