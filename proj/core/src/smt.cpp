#include "chanlin/smt.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <string_view>

#include "chanlin/saturation.hpp"

namespace chanlin {

namespace {

bool plain_symbol_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("~!@$%^&*_-+=<>.?/").find(c) != std::string_view::npos;
}

class Names {
 public:
  explicit Names(const Instance& inst) : inst_(inst) {}

  std::string x(int e) const { return "x_" + std::to_string(inst_.events[e].id); }

  std::string y(int ch, Op op, int i) const {
    const std::string& name = inst_.channels[ch];
    std::string tail = std::string(op == Op::snd ? "_snd_" : "_rcv_") + std::to_string(i);
    bool plain = true, quotable = true;
    for (char c : name) {
      plain = plain && plain_symbol_char(c);
      quotable = quotable && c != '|' && c != '\\';
    }
    if (plain) return "y_" + name + tail;
    if (quotable) return "|y_" + name + tail + "|";
    return "yc" + std::to_string(ch) + tail;  // cannot collide: other names start with "y_"
  }

 private:
  const Instance& inst_;
};

}  // namespace

std::string emit_smtlib(const Instance& inst, bool with_saturation, SmtStats* stats) {
  const int n = inst.n();
  if (!inst.has_rf)
    for (const Event& ev : inst.events)
      if (ev.op == Op::rcv) throw Refusal("the integer encoding needs an rf relation; this instance has only values");
  Names nm(inst);
  SmtStats st;
  std::ostringstream out;
  auto assert_ = [&](const std::string& body) {
    out << "(assert " << body << ")\n";
    ++st.assertions;
  };

  out << "(set-logic QF_LIA)\n";
  for (int e = 0; e < n; ++e) {
    out << "(declare-fun " << nm.x(e) << " () Int)\n";
    ++st.position_vars;
  }
  for (int ch = 0; ch < inst.m(); ++ch)
    for (Op op : {Op::snd, Op::rcv})
      for (int i = 0; i <= n; ++i) {
        out << "(declare-fun " << nm.y(ch, op, i) << " () Int)\n";
        ++st.counter_vars;
      }

  // unique positions
  for (int e = 0; e < n; ++e) assert_("(and (<= 0 " + nm.x(e) + ") (<= " + nm.x(e) + " " + std::to_string(n - 1) + "))");
  if (n >= 2) {
    std::string all = "(distinct";
    for (int e = 0; e < n; ++e) all += " " + nm.x(e);
    assert_(all + ")");
  }

  // program order and reads-from
  for (int e = 0; e < n; ++e)
    if (int s = inst.succ(e); s >= 0) assert_("(< " + nm.x(e) + " " + nm.x(s) + ")");
  for (int e = 0; e < n; ++e) {
    const Event& ev = inst.events[e];
    int partner = inst.has_rf ? inst.mate[e] : -1;
    if (ev.op == Op::rcv && partner < 0) {
      out << "; receive " << ev.id << " has no rf source\n";
      assert_("false");
      continue;
    }
    if (ev.op == Op::snd && partner < 0 && inst.is_sync(ev.channel)) {
      out << "; synchronous send " << ev.id << " is never received\n";
      assert_("false");
      continue;
    }
    if (ev.op != Op::snd || partner < 0) continue;
    if (!inst.is_sync(ev.channel)) {
      assert_("(< " + nm.x(e) + " " + nm.x(partner) + ")");
    } else if (inst.events[partner].thread == ev.thread) {
      out << "; synchronous pair " << ev.id << " within one thread\n";
      assert_("false");
    } else {
      assert_("(= (+ " + nm.x(e) + " 1) " + nm.x(partner) + ")");
    }
  }

  // FIFO
  for (int ch = 0; ch < inst.m(); ++ch) {
    std::vector<int> matched, unmatched;
    for (int e = 0; e < n; ++e) {
      const Event& ev = inst.events[e];
      if (ev.channel != ch || ev.op != Op::snd) continue;
      (inst.has_rf && inst.mate[e] >= 0 ? matched : unmatched).push_back(e);
    }
    for (std::size_t i = 0; i < matched.size(); ++i)
      for (std::size_t j = i + 1; j < matched.size(); ++j) {
        auto s1 = nm.x(matched[i]), s2 = nm.x(matched[j]);
        auto r1 = nm.x(inst.mate[matched[i]]), r2 = nm.x(inst.mate[matched[j]]);
        assert_("(or (and (< " + s1 + " " + s2 + ") (< " + r1 + " " + r2 + ")) (and (> " + s1 + " " + s2 + ") (> " + r1 +
                " " + r2 + ")))");
      }
    for (int s1 : matched)
      for (int s2 : unmatched) assert_("(< " + nm.x(s1) + " " + nm.x(s2) + ")");
  }

  // capacity counters
  for (int ch = 0; ch < inst.m(); ++ch) {
    for (Op op : {Op::snd, Op::rcv}) {
      assert_("(= " + nm.y(ch, op, 0) + " 0)");
      std::vector<int> mine;
      for (int e = 0; e < n; ++e)
        if (inst.events[e].channel == ch && inst.events[e].op == op) mine.push_back(e);
      for (int i = 0; i < n; ++i) {
        std::string sum = "(+ " + nm.y(ch, op, i);
        for (int e : mine) sum += " (ite (= " + nm.x(e) + " " + std::to_string(i) + ") 1 0)";
        sum += mine.empty() ? " 0)" : ")";
        assert_("(= " + nm.y(ch, op, i + 1) + " " + sum + ")");
      }
    }
    // a synchronous send is momentarily in flight until its receive follows
    Cap cap = inst.is_sync(ch) ? 1 : inst.caps[ch];
    for (int i = 0; i <= n; ++i) {
      auto ys = nm.y(ch, Op::snd, i), yr = nm.y(ch, Op::rcv, i);
      assert_("(<= " + yr + " " + ys + ")");
      if (cap != kInf) assert_("(<= " + ys + " (+ " + yr + " " + std::to_string(cap) + "))");
    }
  }

  if (with_saturation) {
    SaturatedOrder order = saturate(inst);
    if (order.cyclic()) {
      out << "; saturated order is cyclic\n";
      assert_("false");
    } else {
      for (int e = 0; e < n; ++e)
        for (int tau = 0; tau < inst.t(); ++tau) {
          if (tau == inst.events[e].thread) continue;
          int p = order.succ_pos(e, tau);
          if (p >= inst.thread_size(tau)) continue;
          assert_("(< " + nm.x(e) + " " + nm.x(inst.at(tau, p)) + ")");
          ++st.saturation_edges;
        }
    }
  }

  out << "(check-sat)\n";
  if (stats) *stats = st;
  return out.str();
}

const char* to_string(SolverAnswer a) {
  switch (a) {
    case SolverAnswer::sat: return "sat";
    case SolverAnswer::unsat: return "unsat";
    case SolverAnswer::unknown: return "unknown";
    case SolverAnswer::error: return "error";
  }
  return "?";
}

SolverResult run_external_solver(const std::string& path, const std::string& command) {
  std::string quoted = "'";
  for (char c : path) quoted += c == '\'' ? std::string("'\\''") : std::string(1, c);
  quoted += "'";
  std::string cmd = command;
  if (auto at = cmd.find("{}"); at != std::string::npos)
    cmd.replace(at, 2, quoted);
  else
    cmd += " " + quoted;
  cmd += " 2>&1";

  SolverResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    r.output = "failed to start solver";
    return r;
  }
  std::array<char, 4096> buf;
  for (std::size_t got; (got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.output.append(buf.data(), got);
  int status = pclose(pipe);
  if (status != 0) return r;

  std::istringstream words(r.output);
  for (std::string w; words >> w;) {
    if (w == "sat") r.answer = SolverAnswer::sat;
    else if (w == "unsat") r.answer = SolverAnswer::unsat;
    else if (w == "unknown") r.answer = SolverAnswer::unknown;
    else continue;
    break;
  }
  return r;
}

}  // namespace chanlin
