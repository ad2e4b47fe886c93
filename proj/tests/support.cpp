#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace chanlin::support {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

std::string instance_path(const std::string& name) { return std::string(CHANLIN_INSTANCE_DIR) + "/" + name; }

Instance random_arbitrary(std::mt19937_64& rng, const ArbitraryParams& p) {
  int n = uniform(rng, 0, p.max_events);
  int t = uniform(rng, 1, p.max_threads);
  int m = uniform(rng, 1, p.max_channels);
  InstanceBuilder b;
  for (int c = 0; c < m; ++c) b.channel("c" + std::to_string(c), p.cap_menu[uniform(rng, 0, static_cast<int>(p.cap_menu.size()) - 1)]);
  for (int e = 0; e < n; ++e)
    b.event(e + 1, "t" + std::to_string(uniform(rng, 0, t - 1)), uniform(rng, 0, 1) ? Op::snd : Op::rcv,
            "c" + std::to_string(uniform(rng, 0, m - 1)), "v" + std::to_string(uniform(rng, 0, p.value_count - 1)));
  return b.build();
}

Instance random_rf(std::mt19937_64& rng, const Instance& inst) {
  std::vector<int> mate(inst.n(), -1);
  bool complete = uniform(rng, 0, 99) < 85;
  for (int c = 0; c < inst.m(); ++c) {
    std::vector<int> sends, receives;
    for (int e = 0; e < inst.n(); ++e)
      if (inst.events[e].channel == c) (inst.events[e].op == Op::snd ? sends : receives).push_back(e);
    std::shuffle(sends.begin(), sends.end(), rng);
    std::shuffle(receives.begin(), receives.end(), rng);
    std::size_t pairs = std::min(sends.size(), receives.size());
    if (!complete && pairs > 0) pairs = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pairs)));
    for (std::size_t i = 0; i < pairs; ++i) {
      mate[sends[i]] = receives[i];
      mate[receives[i]] = sends[i];
    }
  }
  Instance r = with_mate(without_values(inst), std::move(mate));
  r.has_rf = true;
  return r;
}

SuiteCase suite_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  SuiteCase out;
  int kind = static_cast<int>(seed % 4);
  if (kind <= 1) {
    RandomParams p;
    p.events = uniform(rng, 1, 8);
    p.threads = uniform(rng, 1, 3);
    p.channels = uniform(rng, 1, 3);
    p.value_count = uniform(rng, 1, 3);
    p.seed = rng();
    Instance pos = random_positive(p).instance;
    out.values = without_rf(pos);
    out.rf = without_values(pos);
    out.rf.has_rf = true;
    if (kind == 1) {
      out.rf = mutate_rf(pos, rng(), 1 + uniform(rng, 0, 2)).instance;
      int distinct = static_cast<int>(out.values.values.size());
      if (out.values.n() > 0 && distinct > 1) {
        // perturb one value so the value-based suite also sees negatives
        int e = uniform(rng, 0, out.values.n() - 1);
        out.values.events[e].value = (out.values.events[e].value + 1) % distinct;
      }
    }
    return out;
  }
  ArbitraryParams p;
  p.value_count = uniform(rng, 1, 3);
  out.values = random_arbitrary(rng, p);
  out.rf = random_rf(rng, out.values);
  return out;
}

bool has_hamiltonian_cycle(const Graph& g) {
  if (g.nodes == 0) return false;
  std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
  std::vector<int> perm(g.nodes);
  for (int i = 0; i < g.nodes; ++i) perm[i] = i;
  if (g.nodes == 1) return false;  // a cycle through one node would need a self-loop
  do {
    bool ok = true;
    for (int i = 0; i < g.nodes && ok; ++i) ok = edges.count({perm[i], perm[(i + 1) % g.nodes]}) > 0;
    if (ok) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

namespace {

bool some_assignment(int vars, const std::function<bool(const std::vector<bool>&)>& pred) {
  std::vector<bool> a(vars + 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars); ++mask) {
    for (int v = 1; v <= vars; ++v) a[v] = (mask >> (v - 1)) & 1;
    if (pred(a)) return true;
  }
  return false;
}

bool literal_true(int lit, const std::vector<bool>& a) { return lit > 0 ? a[lit] : !a[-lit]; }

}  // namespace

bool is_satisfiable(const CnfFormula& f) {
  return some_assignment(f.num_vars, [&](const std::vector<bool>& a) {
    return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& c) {
      return std::any_of(c.begin(), c.end(), [&](int lit) { return literal_true(lit, a); });
    });
  });
}

bool is_one_in_three_satisfiable(const CnfFormula& f) {
  return some_assignment(f.num_vars, [&](const std::vector<bool>& a) {
    return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& c) {
      return std::count_if(c.begin(), c.end(), [&](int lit) { return literal_true(lit, a); }) == 1;
    });
  });
}

bool has_orthogonal_pair(const OvInstance& ov) {
  for (const auto& a : ov.a)
    for (const auto& b : ov.b) {
      bool orth = true;
      for (int k = 0; k < ov.dim; ++k) orth = orth && !(a[k] && b[k]);
      if (orth) return true;
    }
  return false;
}

bool is_sequentially_consistent(const VscReadInstance& v) {
  std::map<std::string, std::vector<const MemEvent*>> threads;
  for (const auto& e : v.events) threads[e.thread].push_back(&e);
  std::vector<std::vector<const MemEvent*>> seqs;
  for (auto& [_, s] : threads) seqs.push_back(s);
  std::map<std::uint64_t, std::uint64_t> source;
  for (auto [w, r] : v.rf) source[r] = w;

  std::vector<std::size_t> at(seqs.size(), 0);
  std::map<std::string, std::uint64_t> last;  // register -> write id
  std::function<bool()> dfs = [&]() -> bool {
    bool done = true;
    for (std::size_t t = 0; t < seqs.size(); ++t) {
      if (at[t] == seqs[t].size()) continue;
      done = false;
      const MemEvent* e = seqs[t][at[t]];
      if (e->write) {
        auto it = last.find(e->reg);
        std::optional<std::uint64_t> prev;
        if (it != last.end()) prev = it->second;
        last[e->reg] = e->id;
        ++at[t];
        if (dfs()) return true;
        --at[t];
        if (prev) last[e->reg] = *prev;
        else last.erase(e->reg);
      } else {
        auto it = last.find(e->reg);
        auto src = source.find(e->id);
        if (it == last.end() || src == source.end() || it->second != src->second) continue;
        ++at[t];
        if (dfs()) return true;
        --at[t];
      }
    }
    return done;
  };
  return dfs();
}

bool twosat_truth_table(const TwoSatFormula& f) {
  if (f.contradiction) return false;
  std::vector<bool> a(f.num_vars);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
    for (int v = 0; v < f.num_vars; ++v) a[v] = (mask >> v) & 1;
    bool ok = true;
    for (auto [x, y] : f.clauses) {
      auto val = [&](int lit) { return (lit & 1) ? !a[lit >> 1] : a[lit >> 1]; };
      if (!val(x) && !val(y)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

Graph random_digraph(std::mt19937_64& rng, int max_nodes) {
  Graph g;
  g.nodes = uniform(rng, 1, max_nodes);
  int density = uniform(rng, 35, 95);
  for (int u = 0; u < g.nodes; ++u)
    for (int v = 0; v < g.nodes; ++v)
      if (u != v && uniform(rng, 0, 99) < density) g.edges.emplace_back(u, v);
  return g;
}

CnfFormula random_3cnf(std::mt19937_64& rng, int vars, int clauses) {
  CnfFormula f;
  f.num_vars = vars;
  for (int j = 0; j < clauses; ++j) {
    std::vector<int> c;
    for (int q = 0; q < 3; ++q) c.push_back(uniform(rng, 1, vars) * (uniform(rng, 0, 1) ? 1 : -1));
    f.clauses.push_back(c);
  }
  return f;
}

OvInstance random_ov(std::mt19937_64& rng, int max_n, int max_d) {
  OvInstance ov;
  int n = uniform(rng, 1, max_n);
  ov.dim = uniform(rng, 1, max_d);
  auto vec = [&] {
    std::vector<int> v(ov.dim);
    do
      for (auto& x : v) x = uniform(rng, 0, 1);
    while (std::none_of(v.begin(), v.end(), [](int x) { return x != 0; }));
    return v;
  };
  for (int i = 0; i < n; ++i) ov.a.push_back(vec());
  for (int i = 0; i < n; ++i) ov.b.push_back(vec());
  return ov;
}

VscReadInstance random_vsc_read(std::mt19937_64& rng, int max_events) {
  VscReadInstance v;
  int n = uniform(rng, 1, max_events);
  int threads = uniform(rng, 1, 3);
  int regs = uniform(rng, 1, 2);
  for (int i = 0; i < n; ++i)
    v.events.push_back({static_cast<std::uint64_t>(i + 1), "p" + std::to_string(uniform(rng, 0, threads - 1)),
                        uniform(rng, 0, 1) == 1, std::string(1, static_cast<char>('a' + uniform(rng, 0, regs - 1)))});
  for (auto& e : v.events) {
    if (e.write) continue;
    std::vector<std::uint64_t> writes;
    for (const auto& w : v.events)
      if (w.write && w.reg == e.reg) writes.push_back(w.id);
    if (writes.empty()) {
      e.write = true;
      continue;
    }
    v.rf.emplace_back(writes[uniform(rng, 0, static_cast<int>(writes.size()) - 1)], e.id);
  }
  return v;
}

TwoSatFormula random_2sat(std::mt19937_64& rng, int max_vars) {
  TwoSatFormula f;
  f.num_vars = uniform(rng, 1, max_vars);
  int clauses = uniform(rng, 0, 3 * f.num_vars);
  for (int i = 0; i < clauses; ++i) {
    int a = 2 * uniform(rng, 0, f.num_vars - 1) + uniform(rng, 0, 1);
    int b = 2 * uniform(rng, 0, f.num_vars - 1) + uniform(rng, 0, 1);
    f.add(a, b);
  }
  return f;
}

}  // namespace chanlin::support
