#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chanlin/channels.hpp"
#include "chanlin/fastpath.hpp"
#include "chanlin/frontier.hpp"
#include "chanlin/generators.hpp"
#include "chanlin/oracle.hpp"
#include "chanlin/smt.hpp"
#include "chanlin/wellformed.hpp"

namespace chanlin {

namespace {

struct CheckOpts {
  std::string input, algo = "auto", witness;
  bool no_saturation = false;
};

struct GenerateOpts {
  std::string mode, reduction, input, output, caps = "0,1,2,inf";
  std::uint64_t seed = 1;
  int events = 10, threads = 2, channels = 1, values = 2;
};

struct MutateOpts {
  std::string input, output;
  std::uint64_t seed = 1;
  std::optional<int> rounds;
};

struct SmtOpts {
  std::string input, output, solver;
  bool with_saturation = false;
};

std::string max_cap_text(const Instance& inst) {
  if (inst.m() == 0) return "0";
  return cap_text(*std::max_element(inst.caps.begin(), inst.caps.end()));
}

void print_shape(const Instance& inst, std::ostream& out) {
  out << "n: " << inst.n() << "\nt: " << inst.t() << "\nm: " << inst.m() << "\nk: " << max_cap_text(inst) << "\n";
}

// Writes to the file, or to out when path is empty or "-".
void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << text;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return in;
}

bool acyclic_applicable(const Instance& inst) {
  if (!inst.has_rf || !communication_topology(inst).acyclic) return false;
  for (const auto& c : classify_channels(inst))
    if (c.kind == ChannelClass::bounded && c.bound != 1) return false;
  return true;
}

bool all_sync(const Instance& inst) {
  return std::all_of(inst.caps.begin(), inst.caps.end(), [](Cap c) { return c == 0; });
}

Verdict solve_with(const Instance& inst, const CheckOpts& o) {
  auto rf_frontier = [&] { return o.no_saturation ? solve_vchrf(inst) : solve_vchrf_saturated(inst); };
  if (o.algo == "frontier") return solve_vch(inst);
  if (o.algo == "frontier-rf") return rf_frontier();
  if (o.algo == "sync") return solve_sync(inst);
  if (o.algo == "acyclic") return solve_acyclic(inst);
  if (o.algo == "brute") return brute_force(inst);
  // auto: refusals fall through to the next candidate
  if (inst.has_rf && all_sync(inst)) try {
      return solve_sync(inst);
    } catch (const Refusal&) {
    }
  if (acyclic_applicable(inst)) try {
      return solve_acyclic(inst);
    } catch (const Refusal&) {
    }
  if (inst.has_rf) return rf_frontier();
  return solve_vch(inst);
}

int cmd_check(const CheckOpts& o, std::ostream& out) {
  Instance inst = load_instance(o.input);
  if (inst.kind == Kind::trace) {
    auto v = check_well_formed(inst);
    if (v)
      out << "trace_check: violation " << to_string(v->kind) << " at " << v->position << "\n";
    else
      out << "trace_check: ok\n";
    Instance abs = as_abstract(inst);
    if (!v && !inst.has_rf && !inst.has_all_values()) abs = derive_abstract(inst);
    inst = std::move(abs);
  }
  Verdict v = solve_with(inst, o);
  out << "verdict: " << (v.consistent ? "consistent" : "inconsistent") << "\n";
  out << "algorithm: " << v.algorithm << "\n";
  out << "explored: " << v.explored << "\n";
  out << "clauses: " << v.clauses << "\n";
  if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
  if (v.consistent) {
    out << "witness:";
    for (int e : v.witness) out << " " << inst.events[e].id;
    out << "\n";
    if (!o.witness.empty()) {
      Instance w = inst;
      w.kind = Kind::trace;
      w.trace = v.witness;
      write_text(o.witness, serialize_instance(w), out);
    }
  }
  return v.consistent ? 0 : 1;
}

std::vector<Cap> parse_caps(const std::string& text) {
  std::vector<Cap> caps;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item == "inf" || item == "INF") {
      caps.push_back(kInf);
      continue;
    }
    std::size_t used = 0;
    unsigned long long c = 0;
    try {
      c = std::stoull(item, &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ValidationError("bad capacity '" + item + "'");
    caps.push_back(c);
  }
  if (caps.empty()) throw ValidationError("empty capacity list");
  return caps;
}

int cmd_generate(const GenerateOpts& o, std::ostream& out, std::ostream& err) {
  Instance inst;
  if (o.mode == "random" || (o.mode.empty() && o.reduction.empty())) {
    RandomParams p;
    p.events = o.events;
    p.threads = o.threads;
    p.channels = o.channels;
    p.value_count = o.values;
    p.seed = o.seed;
    p.cap_menu = parse_caps(o.caps);
    inst = random_positive(p).instance;
  } else if (!o.mode.empty()) {
    throw ValidationError("unknown generator '" + o.mode + "'");
  } else if (o.reduction == "pipeline") {
    inst = sync_pipeline(o.events, o.threads);
  } else {
    if (o.input.empty()) throw ValidationError("--input is required for --reduction " + o.reduction);
    auto in = open_input(o.input);
    if (o.reduction == "ham") inst = from_hamiltonian(parse_digraph(in));
    else if (o.reduction == "one-in-three") inst = from_one_in_three_two_threads(parse_dimacs(in));
    else if (o.reduction == "t3m5") inst = from_3sat_t3_m5(parse_dimacs(in));
    else if (o.reduction == "ov") inst = from_orthogonal_vectors(parse_ov(in));
    else if (o.reduction == "vsc-read") inst = from_vsc_read(parse_vsc_read(in));
    else throw ValidationError("unknown reduction '" + o.reduction + "'");
  }
  bool to_stdout = o.output.empty() || o.output == "-";
  write_text(o.output, serialize_instance(inst), out);
  print_shape(inst, to_stdout ? err : out);
  return 0;
}

int cmd_mutate(const MutateOpts& o, std::ostream& out, std::ostream& err) {
  Instance inst = load_instance(o.input);
  Mutation m = mutate_rf(inst, o.seed, o.rounds);
  bool to_stdout = o.output.empty() || o.output == "-";
  write_text(o.output, serialize_instance(m.instance), out);
  auto& info = to_stdout ? err : out;
  info << "rounds: " << m.rounds << "\napplied: " << m.applied << "\nskipped: " << m.skipped << "\n";
  return 0;
}

int cmd_emit_smt(const SmtOpts& o, std::ostream& out, std::ostream& err) {
  Instance inst = load_instance(o.input);
  if (inst.kind == Kind::trace) inst = as_abstract(inst);
  SmtStats st;
  std::string text = emit_smtlib(inst, o.with_saturation, &st);
  bool to_stdout = o.output.empty() || o.output == "-";
  write_text(o.output, text, out);
  auto& info = to_stdout ? err : out;
  info << "position_vars: " << st.position_vars << "\ncounter_vars: " << st.counter_vars
       << "\nassertions: " << st.assertions << "\n";
  if (o.with_saturation) info << "saturation_edges: " << st.saturation_edges << "\n";

  std::string solver = o.solver;
  if (solver.empty())
    if (const char* env = std::getenv("CHANLIN_SMT_CMD")) solver = env;
  if (solver.empty()) return 0;

  std::string path = o.output;
  std::filesystem::path temp;
  if (to_stdout) {
    temp = std::filesystem::temp_directory_path() / ("chanlin_" + std::to_string(std::hash<std::string>{}(text)) + ".smt2");
    std::ofstream(temp) << text;
    path = temp.string();
  }
  SolverResult r = run_external_solver(path, solver);
  if (!temp.empty()) std::filesystem::remove(temp);
  info << "solver: " << to_string(r.answer) << "\n";
  if (r.answer == SolverAnswer::sat) return 0;
  if (r.answer == SolverAnswer::unsat) return 1;
  if (r.answer == SolverAnswer::error) err << r.output;
  return 2;
}

int cmd_stats(const std::string& input, std::ostream& out) {
  Instance inst = load_instance(input);
  print_shape(inst, out);
  auto classes = classify_channels(inst);
  out << "channels:";
  for (int c = 0; c < inst.m(); ++c) out << " " << inst.channels[c] << "=" << to_string(classes[c]);
  out << "\n";
  out << "topology: " << (communication_topology(inst).acyclic ? "acyclic" : "cyclic") << "\n";
  int receives = 0, matched = 0;
  for (int e = 0; e < inst.n(); ++e)
    if (inst.events[e].op == Op::rcv) {
      ++receives;
      if (inst.has_rf && inst.mate[e] >= 0) ++matched;
    }
  out << "rf_coverage: " << matched << "/" << receives << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consistency checking for message-passing executions over FIFO channels", "chanlin"};
  app.require_subcommand(1);

  CheckOpts check;
  auto* c = app.add_subcommand("check", "Decide whether an instance has a valid concretization");
  c->add_option("input", check.input, "Instance file")->required();
  c->add_option("--algo", check.algo, "Algorithm")
      ->check(CLI::IsMember({"auto", "frontier", "frontier-rf", "sync", "acyclic", "brute"}));
  c->add_flag("--no-saturation", check.no_saturation, "Disable saturation pruning for frontier-rf");
  c->add_option("--witness", check.witness, "Write the witness as a trace instance");

  GenerateOpts gen;
  auto* g = app.add_subcommand("generate", "Generate a random or reduction instance");
  g->add_option("mode", gen.mode, "'random' for a random consistent instance");
  g->add_option("--reduction", gen.reduction, "Reduction")
      ->check(CLI::IsMember({"ham", "one-in-three", "t3m5", "ov", "vsc-read", "pipeline"}));
  g->add_option("--input", gen.input, "Source problem file");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--events", gen.events, "Event count");
  g->add_option("--threads", gen.threads, "Thread count");
  g->add_option("--channels", gen.channels, "Channel count");
  g->add_option("--values", gen.values, "Distinct value count");
  g->add_option("--caps", gen.caps, "Capacity menu, e.g. 0,1,2,inf");
  g->add_option("--output", gen.output, "Output file (stdout when omitted)");

  MutateOpts mut;
  auto* m = app.add_subcommand("mutate", "Perturb the rf relation of an instance");
  m->add_option("input", mut.input, "Instance file")->required();
  m->add_option("--seed", mut.seed, "Random seed");
  m->add_option("--rounds", mut.rounds, "Mutation rounds (default max(5, ceil(0.05 n)))");
  m->add_option("--output", mut.output, "Output file (stdout when omitted)");

  SmtOpts smt;
  auto* s = app.add_subcommand("emit-smt", "Emit the integer-arithmetic encoding");
  s->add_option("input", smt.input, "Instance file")->required();
  s->add_flag("--with-saturation", smt.with_saturation, "Add saturated-order constraints");
  s->add_option("--output", smt.output, "Output file (stdout when omitted)");
  s->add_option("--solver", smt.solver, "Solver command template; defaults to CHANLIN_SMT_CMD");

  std::string stats_input;
  auto* st = app.add_subcommand("stats", "Print structural statistics");
  st->add_option("input", stats_input, "Instance file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c->parsed()) return cmd_check(check, out);
    if (g->parsed()) return cmd_generate(gen, out, err);
    if (m->parsed()) return cmd_mutate(mut, out, err);
    if (s->parsed()) return cmd_emit_smt(smt, out, err);
    if (st->parsed()) return cmd_stats(stats_input, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace chanlin
