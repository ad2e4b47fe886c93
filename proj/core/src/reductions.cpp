#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "chanlin/generators.hpp"

namespace chanlin {

namespace {

// Appends events thread by thread; rf may name sends emitted later.
class Emitter {
 public:
  void channel(const std::string& name, Cap cap) { b_.channel(name, cap); }

  std::uint64_t snd(const std::string& thread, const std::string& ch, const std::string& key = {},
                    std::optional<std::string> value = std::nullopt) {
    std::uint64_t id = next_++;
    b_.event(id, thread, Op::snd, ch, std::move(value));
    if (!key.empty()) send_of_[key] = id;
    return id;
  }

  std::uint64_t rcv(const std::string& thread, const std::string& ch, const std::string& key = {},
                    std::optional<std::string> value = std::nullopt) {
    std::uint64_t id = next_++;
    b_.event(id, thread, Op::rcv, ch, std::move(value));
    if (!key.empty()) wants_.emplace_back(key, id);
    return id;
  }

  Instance finish() {
    for (auto& [key, id] : wants_) {
      auto it = send_of_.find(key);
      if (it == send_of_.end()) throw std::logic_error("reduction references unknown send " + key);
      b_.rf(it->second, id);
    }
    return b_.build();
  }

 private:
  InstanceBuilder b_;
  std::uint64_t next_ = 1;
  std::unordered_map<std::string, std::uint64_t> send_of_;
  std::vector<std::pair<std::string, std::uint64_t>> wants_;
};

std::string k(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += '/';
    out += p;
  }
  return out;
}

template <class T>
std::string s(T x) {
  return std::to_string(x);
}

}  // namespace

Instance from_hamiltonian(const Graph& g) {
  if (g.nodes < 1) throw ValidationError("graph needs at least one node");
  std::vector<int> out_deg(g.nodes, 0), in_deg(g.nodes, 0);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.nodes || v >= g.nodes) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loop");
    if (!seen.emplace(u, v).second) throw ValidationError("duplicate edge");
    ++out_deg[u];
    ++in_deg[v];
  }
  const std::string one = "1";
  bool degenerate = g.nodes < 2;
  for (int v = 0; v < g.nodes; ++v) degenerate = degenerate || out_deg[v] == 0 || in_deg[v] == 0;
  if (degenerate) {
    // a synchronous send received by its own thread can never be scheduled
    InstanceBuilder b;
    b.channel("dead", 0);
    b.event(1, "t", Op::snd, "dead", one);
    b.event(2, "t", Op::rcv, "dead", one);
    return b.build();
  }

  const int nv = g.nodes, ne = static_cast<int>(g.edges.size());
  auto ch = [](int v) { return "ch" + s(v); };
  auto chp = [](int v) { return "chp" + s(v); };
  Emitter x;
  for (int v = 0; v < nv; ++v) {
    x.channel(ch(v), static_cast<Cap>(out_deg[v] + in_deg[v]));
    x.channel(chp(v), static_cast<Cap>(in_deg[v]));
  }
  x.channel("lock", 1);
  x.channel("alpha", static_cast<Cap>(nv));
  x.channel("cnt", static_cast<Cap>(ne));

  const std::string init = "init", free = "free";
  x.snd(init, "lock", {}, one);
  for (int i = 0; i < nv; ++i) x.snd(init, "cnt", {}, one);
  x.snd(init, ch(0), {}, one);
  for (int v = 0; v < nv; ++v) x.snd(init, chp(v), {}, one);
  x.rcv(init, "lock", {}, one);

  x.snd(free, "lock", {}, one);
  for (int i = 0; i < ne; ++i) x.snd(free, "cnt", {}, one);
  x.rcv(free, ch(0), {}, one);
  for (int i = 0; i < ne; ++i) x.rcv(free, "cnt", {}, one);
  x.rcv(free, "lock", {}, one);
  for (int i = 0; i < nv; ++i) x.snd(free, "alpha", {}, one);

  auto edges = g.edges;
  std::sort(edges.begin(), edges.end());
  for (int v = 0; v < nv; ++v) {
    std::string th = "node" + s(v);
    x.rcv(th, "alpha", {}, one);
    for (auto [a, b] : edges)
      if (a == v) {
        x.snd(th, ch(v), {}, one);
        x.snd(th, chp(b), {}, one);
        x.snd(th, "cnt", {}, one);
      }
  }
  for (auto [u, v] : edges) {
    std::string th = "edge" + s(u) + "_" + s(v);
    x.snd(th, "lock", {}, one);
    x.rcv(th, ch(u), {}, one);
    x.rcv(th, "cnt", {}, one);
    x.rcv(th, chp(v), {}, one);
    x.snd(th, ch(v), {}, one);
    x.rcv(th, "lock", {}, one);
  }
  return x.finish();
}

Instance from_one_in_three_two_threads(const CnfFormula& f) {
  for (const auto& c : f.clauses) {
    if (c.size() != 3) throw ValidationError("1-in-3 clauses need exactly three literals");
    std::set<int> vars;
    for (int lit : c) {
      if (lit <= 0 || lit > f.num_vars) throw ValidationError("1-in-3 literals must be positive and in range");
      vars.insert(lit);
    }
    if (vars.size() != 3) throw ValidationError("clause repeats a variable");
  }
  const std::string T = "tT", F = "tF", top = "top", bot = "bot";
  const Cap inf = kInf;
  Emitter x;
  x.channel("l1", inf);
  x.channel("l2", inf);
  x.channel("alpha", inf);
  for (std::size_t j = 0; j < f.clauses.size(); ++j) x.channel("C" + s(static_cast<int>(j + 1)), inf);

  auto vi = [](int i, int p) { return std::optional<std::string>("vi_" + s(i) + "_" + s(p)); };
  auto wj = [](int j, int p) { return std::optional<std::string>("wj_" + s(j) + "_" + s(p)); };

  for (int i = 1; i <= f.num_vars; ++i) {
    std::vector<std::string> occ;
    for (std::size_t j = 0; j < f.clauses.size(); ++j)
      if (std::count(f.clauses[j].begin(), f.clauses[j].end(), i)) occ.push_back("C" + s(static_cast<int>(j + 1)));

    x.snd(T, "alpha", {}, vi(i, 3));
    x.rcv(T, "alpha", {}, vi(i, 4));
    x.snd(T, "l1", {}, vi(i, 1));
    x.snd(T, "l2", {}, vi(i, 1));
    x.rcv(T, "l2", {}, vi(i, 1));
    for (const auto& c : occ) x.snd(T, c, {}, top);
    x.rcv(T, "l1", {}, vi(i, 1));

    x.snd(F, "alpha", {}, vi(i, 4));
    x.rcv(F, "alpha", {}, vi(i, 3));
    x.snd(F, "l2", {}, vi(i, 2));
    x.snd(F, "l1", {}, vi(i, 2));
    x.rcv(F, "l1", {}, vi(i, 2));
    for (const auto& c : occ) x.snd(F, c, {}, bot);
    x.rcv(F, "l2", {}, vi(i, 2));
  }
  for (int j = 1; j <= static_cast<int>(f.clauses.size()); ++j) {
    std::string c = "C" + s(j);
    x.snd(T, "alpha", {}, wj(j, 4));
    x.rcv(T, "alpha", {}, wj(j, 5));
    x.snd(T, "l1", {}, wj(j, 1));
    x.snd(T, "l2", {}, wj(j, 1));
    x.rcv(T, "l2", {}, wj(j, 1));
    x.rcv(T, c, {}, top);
    x.rcv(T, c, {}, bot);
    x.rcv(T, "l1", {}, wj(j, 1));

    x.snd(F, "alpha", {}, wj(j, 5));
    x.rcv(F, "alpha", {}, wj(j, 4));
    for (int p : {2, 3}) {
      x.snd(F, "l2", {}, wj(j, p));
      x.snd(F, "l1", {}, wj(j, p));
      x.rcv(F, "l1", {}, wj(j, p));
      x.rcv(F, c, {}, bot);
      x.rcv(F, c, {}, top);
      x.rcv(F, "l2", {}, wj(j, p));
    }
  }
  return x.finish();
}

Instance from_3sat_t3_m5(const CnfFormula& f) {
  for (const auto& c : f.clauses) {
    if (c.size() != 3) throw ValidationError("3CNF clauses need exactly three literals");
    for (int lit : c)
      if (lit == 0 || lit > f.num_vars || -lit > f.num_vars) throw ValidationError("literal out of range");
  }
  const std::string t1 = "t1", t2 = "t2", t3 = "t3";
  Emitter x;
  for (const char* c : {"ch1", "ch2", "c1", "c2", "c3"}) x.channel(c, kInf);

  // keys: <thread>/<channel>/<phase>/<var> for the ch1/ch2 relay sends
  auto relay = [](const std::string& th, const std::string& ch, int j, int p) { return k({th, ch, s(j), s(p)}); };
  for (int p = 1; p <= f.num_vars; ++p) {
    x.snd(t1, "ch1", relay(t1, "ch1", 0, p));
    x.snd(t1, "ch2", relay(t1, "ch2", 0, p));
    x.snd(t2, "ch2", relay(t2, "ch2", 0, p));
    x.snd(t2, "ch1", relay(t2, "ch1", 0, p));
  }

  for (int j = 1; j <= static_cast<int>(f.clauses.size()); ++j) {
    auto lits = f.clauses[j - 1];
    std::stable_sort(lits.begin(), lits.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
    // clause-channel sends keyed by <value>/<phase>/<q>
    for (int p = 1; p <= f.num_vars; ++p) {
      x.snd(t1, "ch1", relay(t1, "ch1", j, p));
      x.rcv(t1, "ch2", relay(t1, "ch2", j - 1, p));
      for (int q = 1; q <= 3; ++q)
        if (std::abs(lits[q - 1]) == p) x.snd(t1, "c" + s(q), k({"bot", s(j), s(q)}));
      x.rcv(t1, "ch1", relay(t1, "ch1", j - 1, p));
      x.snd(t1, "ch2", relay(t1, "ch2", j, p));

      x.snd(t2, "ch2", relay(t2, "ch2", j, p));
      x.rcv(t2, "ch1", relay(t2, "ch1", j - 1, p));
      for (int q = 1; q <= 3; ++q)
        if (std::abs(lits[q - 1]) == p) x.snd(t2, "c" + s(q), k({"top", s(j), s(q)}));
      x.rcv(t2, "ch2", relay(t2, "ch2", j - 1, p));
      x.snd(t2, "ch1", relay(t2, "ch1", j, p));
    }
    // receive labelled top on c_q reads the top send for a positive literal
    auto src = [&](int q, bool top_rcv) {
      bool positive = lits[q - 1] > 0;
      bool from_top = positive == top_rcv;
      return k({from_top ? "top" : "bot", s(j), s(q)});
    };
    x.rcv(t1, "c1", src(1, true));
    x.rcv(t1, "c2", src(2, false));
    x.rcv(t2, "c2", src(2, true));
    x.rcv(t2, "c3", src(3, false));
    x.rcv(t3, "c3", src(3, true));
    x.rcv(t3, "c1", src(1, false));
  }
  return x.finish();
}

Instance from_orthogonal_vectors(const OvInstance& ov) {
  const int n = static_cast<int>(ov.a.size()), d = ov.dim;
  if (static_cast<int>(ov.b.size()) != n) throw ValidationError("vector sets differ in size");
  if (n < 1) throw ValidationError("vector sets must be non-empty");
  for (const auto* set : {&ov.a, &ov.b})
    for (const auto& v : *set) {
      if (static_cast<int>(v.size()) != d) throw ValidationError("dimension mismatch");
      if (std::none_of(v.begin(), v.end(), [](int b) { return b != 0; }))
        throw ValidationError("all-zero vectors are not supported");
    }

  const std::string A = "tA", B = "tB";
  Emitter x;
  auto chn = [](int kk) { return "ch" + s(kk + 1); };
  for (int kk = 0; kk < d; ++kk) x.channel(chn(kk), kInf);
  for (const char* c : {"alpha", "beta", "gamma", "delta"}) x.channel(c, kInf);

  auto ones = [&](const std::vector<int>& v) {
    std::vector<int> out;
    for (int kk = 0; kk < d; ++kk)
      if (v[kk]) out.push_back(kk);
    return out;
  };
  // keys name the subscripted sends: <side><i>/<channel>
  auto key = [](const char* side, int i, const std::string& ch) { return k({side + s(i), ch}); };

  for (int i = 1; i <= n; ++i) {
    for (int kk : ones(ov.a[i - 1])) x.snd(A, chn(kk), key("a", i, chn(kk)));
    x.snd(A, "alpha", key("a", i, "alpha"));
  }
  for (int i = n; i >= 1; --i) {
    x.snd(B, "alpha", key("b", i, "alpha"));
    for (int kk : ones(ov.b[i - 1])) x.snd(B, chn(kk), key("b", i, chn(kk)));
  }

  auto drain = [&](const std::string& th, const char* side, int i, const std::vector<int>& v) {
    for (int kk : ones(v)) x.rcv(th, chn(kk), key(side, i, chn(kk)));
  };

  for (int i = 1; i <= n; ++i) {
    x.rcv(A, "alpha", key("a", i, "alpha"));
    if (i == 1) x.snd(A, "gamma", "gamma");
    if (i > 1) x.rcv(A, "beta", key("a", i - 1, "beta"));
    if (i < n) x.snd(A, "beta", key("a", i, "beta"));
    if (i == n) x.rcv(A, "delta", "delta");
    drain(A, "a", i, ov.a[i - 1]);
  }
  for (int i = n; i >= 1; --i) {
    drain(B, "b", i, ov.b[i - 1]);
    if (i == n) {
      x.snd(B, "delta", "delta");
      if (n > 1) x.snd(B, "beta", "B/beta");
    }
    if (i < n) x.rcv(B, "alpha", key("b", i + 1, "alpha"));
    if (i == 1) {
      if (n > 1) x.rcv(B, "beta", "B/beta");
      x.rcv(B, "gamma", "gamma");
      x.rcv(B, "alpha", key("b", 1, "alpha"));
    }
  }
  return x.finish();
}

Instance from_vsc_read(const VscReadInstance& v) {
  std::unordered_map<std::uint64_t, const MemEvent*> by_id;
  for (const auto& e : v.events)
    if (!by_id.emplace(e.id, &e).second) throw ValidationError("duplicate memory event id " + s(e.id));

  std::unordered_map<std::uint64_t, std::uint64_t> source;         // read -> write
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> readers;  // write -> reads
  for (auto [w, r] : v.rf) {
    auto wi = by_id.find(w), ri = by_id.find(r);
    if (wi == by_id.end() || ri == by_id.end()) throw ValidationError("rf endpoint missing");
    if (!wi->second->write || ri->second->write) throw ValidationError("rf must map a write to a read");
    if (wi->second->reg != ri->second->reg) throw ValidationError("read mapped to a write of a different register");
    if (!source.emplace(r, w).second) throw ValidationError("read has two rf sources");
  }
  // number the readers of each write in input order
  std::unordered_map<std::uint64_t, int> read_slot;
  for (const auto& e : v.events) {
    if (e.write) continue;
    auto it = source.find(e.id);
    if (it == source.end()) throw ValidationError("read " + s(e.id) + " has no rf source");
    auto& list = readers[it->second];
    list.push_back(e.id);
    read_slot[e.id] = static_cast<int>(list.size());
  }
  std::map<std::string, int> width;  // m_x per register
  for (const auto& e : v.events)
    if (e.write) width[e.reg] = std::max(width[e.reg], static_cast<int>(readers[e.id].size()));

  Emitter x;
  auto cell = [](const std::string& reg, int i) { return "x_" + reg + "_" + s(i); };
  for (auto& [reg, mx] : width)
    for (int i = 1; i <= mx; ++i) x.channel(cell(reg, i), 1);
  x.channel("lock", 1);

  for (const auto& e : v.events) {
    std::string me = s(e.id);
    x.snd(e.thread, "lock", k({"lock", me}));
    if (e.write) {
      int mx = width[e.reg];
      int used = static_cast<int>(readers[e.id].size());
      for (int i = 1; i <= mx; ++i) x.snd(e.thread, cell(e.reg, i), k({"w", me, s(i)}));
      for (int i = used + 1; i <= mx; ++i) x.rcv(e.thread, cell(e.reg, i), k({"w", me, s(i)}));
    } else {
      auto w = source[e.id];
      x.rcv(e.thread, cell(e.reg, read_slot[e.id]), k({"w", s(w), s(read_slot[e.id])}));
    }
    x.rcv(e.thread, "lock", k({"lock", me}));
  }
  return x.finish();
}

Instance sync_pipeline(int events, int threads) {
  if (threads < 2) throw ValidationError("pipeline needs at least two threads");
  if (events < 0) throw ValidationError("negative event count");
  Emitter x;
  for (int c = 0; c < threads; ++c) x.channel("c" + s(c), 0);
  // emitting per handshake keeps each thread's po in handshake order
  for (int h = 0; h < events / 2; ++h) {
    int from = h % threads, to = (h + 1) % threads;
    std::string key = s(h);
    x.snd("t" + s(from), "c" + s(from), key);
    x.rcv("t" + s(to), "c" + s(from), key);
  }
  return x.finish();
}

}  // namespace chanlin
