#include <istream>
#include <set>
#include <sstream>

#include "chanlin/generators.hpp"

namespace chanlin {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

// Next non-empty line with the comment stripped; false at end of input.
bool next_tokens(std::istream& in, int& line, std::vector<std::string>& tok, char comment = '#') {
  std::string raw;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find(comment); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    tok.clear();
    for (std::string w; ls >> w;) tok.push_back(w);
    if (!tok.empty()) return true;
  }
  return false;
}

long long to_int(const std::string& s, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (...) {
    fail(line, "bad number '" + s + "'");
  }
  if (used != s.size()) fail(line, "bad number '" + s + "'");
  return v;
}

}  // namespace

Graph parse_digraph(std::istream& in) {
  Graph g;
  int line = 0;
  std::vector<std::string> tok;
  if (!next_tokens(in, line, tok) || tok.size() != 2 || tok[0] != "digraph") fail(line, "expected 'digraph <nodes>'");
  g.nodes = static_cast<int>(to_int(tok[1], line));
  if (g.nodes < 0) fail(line, "negative node count");
  std::set<std::pair<int, int>> seen;
  while (next_tokens(in, line, tok)) {
    if (tok.size() != 2) fail(line, "expected '<from> <to>'");
    int u = static_cast<int>(to_int(tok[0], line)), v = static_cast<int>(to_int(tok[1], line));
    if (u < 0 || v < 0 || u >= g.nodes || v >= g.nodes) fail(line, "node index out of range");
    if (u == v) fail(line, "self-loop");
    if (!seen.emplace(u, v).second) fail(line, "duplicate edge");
    g.edges.emplace_back(u, v);
  }
  return g;
}

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  int line = 0;
  long long declared = -1;
  std::vector<int> clause;
  std::vector<std::string> tok;
  bool header = false;
  while (next_tokens(in, line, tok, '\x01')) {
    if (tok[0] == "c") continue;
    if (tok[0][0] == '%') break;
    if (tok[0] == "p") {
      if (header || tok.size() != 4 || tok[1] != "cnf") fail(line, "expected 'p cnf <vars> <clauses>'");
      f.num_vars = static_cast<int>(to_int(tok[2], line));
      declared = to_int(tok[3], line);
      header = true;
      continue;
    }
    if (!header) fail(line, "clause before 'p cnf' header");
    for (const auto& w : tok) {
      long long lit = to_int(w, line);
      if (lit == 0) {
        f.clauses.push_back(clause);
        clause.clear();
        continue;
      }
      if (lit > f.num_vars || -lit > f.num_vars) fail(line, "literal out of range");
      clause.push_back(static_cast<int>(lit));
    }
  }
  if (!header) fail(line, "missing 'p cnf' header");
  if (!clause.empty()) f.clauses.push_back(clause);
  if (declared >= 0 && static_cast<long long>(f.clauses.size()) != declared)
    fail(line, "clause count differs from header");
  return f;
}

OvInstance parse_ov(std::istream& in) {
  OvInstance ov;
  int line = 0;
  std::vector<std::string> tok;
  if (!next_tokens(in, line, tok) || tok.size() != 3 || tok[0] != "ov") fail(line, "expected 'ov <n> <d>'");
  long long n = to_int(tok[1], line);
  ov.dim = static_cast<int>(to_int(tok[2], line));
  if (n < 0 || ov.dim < 0) fail(line, "negative size");
  for (long long r = 0; r < 2 * n; ++r) {
    if (!next_tokens(in, line, tok)) fail(line, "missing vector rows");
    std::string bits;
    for (const auto& w : tok) bits += w;
    if (static_cast<int>(bits.size()) != ov.dim) fail(line, "dimension mismatch");
    std::vector<int> row;
    for (char c : bits) {
      if (c != '0' && c != '1') fail(line, "vector entries must be 0 or 1");
      row.push_back(c - '0');
    }
    (r < n ? ov.a : ov.b).push_back(row);
  }
  if (next_tokens(in, line, tok)) fail(line, "trailing content");
  return ov;
}

VscReadInstance parse_vsc_read(std::istream& in) {
  VscReadInstance v;
  int line = 0;
  std::vector<std::string> tok;
  if (!next_tokens(in, line, tok) || tok.size() != 2 || tok[0] != "vchk" || tok[1] != "v1")
    fail(line, "expected header 'vchk v1'");
  while (next_tokens(in, line, tok)) {
    if (tok[0] == "kind") {
      if (tok.size() != 2 || tok[1] != "mem") fail(line, "memory instances use 'kind mem'");
    } else if (tok[0] == "event") {
      if (tok.size() != 5 || (tok[3] != "r" && tok[3] != "w")) fail(line, "expected 'event <id> <thread> r|w <register>'");
      long long id = to_int(tok[1], line);
      if (id < 0) fail(line, "negative event id");
      v.events.push_back({static_cast<std::uint64_t>(id), tok[2], tok[3] == "w", tok[4]});
    } else if (tok[0] == "rf") {
      if (tok.size() != 3) fail(line, "expected 'rf <write-id> <read-id>'");
      long long w = to_int(tok[1], line), r = to_int(tok[2], line);
      if (w < 0 || r < 0) fail(line, "negative event id");
      v.rf.emplace_back(static_cast<std::uint64_t>(w), static_cast<std::uint64_t>(r));
    } else {
      fail(line, "unknown directive '" + tok[0] + "'");
    }
  }
  return v;
}

}  // namespace chanlin
