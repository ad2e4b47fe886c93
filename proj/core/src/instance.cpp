#include "chanlin/instance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace chanlin {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  if (line > 0) throw ValidationError("line " + std::to_string(line) + ": " + msg);
  throw ValidationError(msg);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::uint64_t parse_u64(const std::string& tok, int line, const char* what) {
  if (!all_digits(tok) || tok.size() > 19) fail(line, std::string("bad ") + what + " '" + tok + "'");
  return std::stoull(tok);
}

}  // namespace

// Natural order: digit runs compare numerically, so t2 < t10.
bool token_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      auto ra = a.substr(i, i2 - i), rb = b.substr(j, j2 - j);
      auto za = ra.find_first_not_of('0'), zb = rb.find_first_not_of('0');
      auto na = za == std::string_view::npos ? std::string_view{} : ra.substr(za);
      auto nb = zb == std::string_view::npos ? std::string_view{} : rb.substr(zb);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      if (ra.size() != rb.size()) return ra.size() < rb.size();
      i = i2;
      j = j2;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

bool Instance::has_all_values() const {
  return std::all_of(events.begin(), events.end(), [](const Event& e) { return e.value >= 0; });
}

std::optional<int> Instance::index_of(std::uint64_t id) const {
  for (int i = 0; i < n(); ++i)
    if (events[i].id == id) return i;
  return std::nullopt;
}

bool Instance::operator==(const Instance& o) const {
  return kind == o.kind && threads == o.threads && channels == o.channels && caps == o.caps &&
         values == o.values && events == o.events && thread_begin == o.thread_begin &&
         trace == o.trace && has_rf == o.has_rf && mate == o.mate;
}

void InstanceBuilder::channel(const std::string& name, Cap cap, int line) {
  if (channel_line_.count(name)) fail(line, "duplicate channel '" + name + "'");
  channel_line_[name] = line;
  channels_.emplace_back(name, cap);
}

void InstanceBuilder::event(std::uint64_t id, const std::string& thread, Op op,
                            const std::string& channel, std::optional<std::string> value, int line) {
  events_.push_back({id, thread, op, channel, std::move(value), line});
}

void InstanceBuilder::rf(std::uint64_t snd, std::uint64_t rcv, int line) {
  rf_.push_back({snd, rcv, line});
}

Instance InstanceBuilder::build() const {
  Instance inst;
  inst.kind = kind_;

  std::unordered_map<std::string, int> ch_index;
  for (auto& [name, cap] : channels_) {
    ch_index[name] = inst.m();
    inst.channels.push_back(name);
    inst.caps.push_back(cap);
  }

  std::set<std::string, decltype(&token_less)> thread_set(&token_less);
  std::set<std::string> value_set;
  std::unordered_map<std::uint64_t, std::size_t> raw_of_id;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const auto& r = events_[i];
    if (!raw_of_id.emplace(r.id, i).second) fail(r.line, "duplicate event id " + std::to_string(r.id));
    if (!ch_index.count(r.channel)) fail(r.line, "channel '" + r.channel + "' has no capacity line");
    thread_set.insert(r.thread);
    if (r.value) value_set.insert(*r.value);
  }
  inst.threads.assign(thread_set.begin(), thread_set.end());
  inst.values.assign(value_set.begin(), value_set.end());

  std::unordered_map<std::string, int> th_index;
  for (int i = 0; i < inst.t(); ++i) th_index[inst.threads[i]] = i;

  // Stable bucket by thread keeps line order as program order.
  std::vector<std::vector<std::size_t>> per_thread(inst.t());
  for (std::size_t i = 0; i < events_.size(); ++i) per_thread[th_index[events_[i].thread]].push_back(i);

  std::vector<int> index_of_raw(events_.size());
  inst.thread_begin.push_back(0);
  for (int tau = 0; tau < inst.t(); ++tau) {
    int pos = 0;
    for (auto raw : per_thread[tau]) {
      const auto& r = events_[raw];
      Event e;
      e.id = r.id;
      e.thread = tau;
      e.op = r.op;
      e.channel = ch_index[r.channel];
      e.value = r.value ? static_cast<int>(std::lower_bound(inst.values.begin(), inst.values.end(), *r.value) -
                                           inst.values.begin())
                        : -1;
      e.pos = pos++;
      index_of_raw[raw] = inst.n();
      inst.events.push_back(e);
    }
    inst.thread_begin.push_back(inst.n());
  }

  if (kind_ == Kind::trace)
    for (std::size_t i = 0; i < events_.size(); ++i) inst.trace.push_back(index_of_raw[i]);

  inst.has_rf = !rf_.empty();
  inst.mate.assign(inst.n(), -1);
  for (const auto& r : rf_) {
    auto s = raw_of_id.find(r.snd), v = raw_of_id.find(r.rcv);
    if (s == raw_of_id.end()) fail(r.line, "rf endpoint missing: " + std::to_string(r.snd));
    if (v == raw_of_id.end()) fail(r.line, "rf endpoint missing: " + std::to_string(r.rcv));
    int se = index_of_raw[s->second], re = index_of_raw[v->second];
    const Event& a = inst.events[se];
    const Event& b = inst.events[re];
    if (a.op != Op::snd || b.op != Op::rcv) fail(r.line, "rf endpoint op mismatch");
    if (a.channel != b.channel) fail(r.line, "rf endpoint channel mismatch");
    if (inst.mate[se] != -1 || inst.mate[re] != -1) fail(r.line, "rf not injective");
    if (a.value >= 0 && b.value >= 0 && a.value != b.value) fail(r.line, "rf pair carries different values");
    inst.mate[se] = re;
    inst.mate[re] = se;
  }
  return inst;
}

Instance parse_instance(std::istream& in) {
  InstanceBuilder b;
  std::string raw;
  int line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "vchk" || tok[1] != "v1") fail(line, "expected header 'vchk v1'");
      header = true;
      continue;
    }
    const auto& d = tok[0];
    if (d == "kind") {
      if (tok.size() != 2) fail(line, "kind takes one argument");
      if (tok[1] == "abstract") b.set_kind(Kind::abstract);
      else if (tok[1] == "trace") b.set_kind(Kind::trace);
      else fail(line, "unknown kind '" + tok[1] + "'");
    } else if (d == "channel") {
      if (tok.size() != 4 || tok[2] != "cap") fail(line, "expected 'channel <name> cap <nat>|inf'");
      Cap cap = tok[3] == "inf" ? kInf : parse_u64(tok[3], line, "capacity");
      if (cap == kInf && tok[3] != "inf") fail(line, "capacity too large");
      b.channel(tok[1], cap, line);
    } else if (d == "event") {
      if (tok.size() != 5 && tok.size() != 6) fail(line, "expected 'event <id> <thread> snd|rcv <channel> [<value>]'");
      Op op;
      if (tok[3] == "snd") op = Op::snd;
      else if (tok[3] == "rcv") op = Op::rcv;
      else fail(line, "unknown op '" + tok[3] + "'");
      std::optional<std::string> value;
      if (tok.size() == 6) value = tok[5];
      b.event(parse_u64(tok[1], line, "event id"), tok[2], op, tok[4], value, line);
    } else if (d == "rf") {
      if (tok.size() != 3) fail(line, "expected 'rf <send-id> <rcv-id>'");
      b.rf(parse_u64(tok[1], line, "event id"), parse_u64(tok[2], line, "event id"), line);
    } else {
      fail(line, "unknown directive '" + d + "'");
    }
  }
  if (!header) fail(line, "missing header 'vchk v1'");
  return b.build();
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return parse_instance(in);
}

std::string cap_text(Cap cap) { return cap == kInf ? "inf" : std::to_string(cap); }

void serialize_instance(const Instance& inst, std::ostream& out) {
  out << "vchk v1\n";
  out << "kind " << (inst.kind == Kind::trace ? "trace" : "abstract") << "\n";
  for (int c = 0; c < inst.m(); ++c) out << "channel " << inst.channels[c] << " cap " << cap_text(inst.caps[c]) << "\n";
  auto emit = [&](int i) {
    const Event& e = inst.events[i];
    out << "event " << e.id << " " << inst.threads[e.thread] << " " << (e.op == Op::snd ? "snd" : "rcv") << " "
        << inst.channels[e.channel];
    if (e.value >= 0) out << " " << inst.values[e.value];
    out << "\n";
  };
  std::vector<int> order;
  if (inst.kind == Kind::trace) order = inst.trace;
  else
    for (int i = 0; i < inst.n(); ++i) order.push_back(i);
  for (int i : order) emit(i);
  if (inst.has_rf)
    for (int i : order)
      if (inst.events[i].op == Op::snd && inst.mate[i] >= 0)
        out << "rf " << inst.events[i].id << " " << inst.events[inst.mate[i]].id << "\n";
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  serialize_instance(inst, out);
  return out.str();
}

Instance without_rf(const Instance& inst) {
  Instance r = inst;
  r.has_rf = false;
  r.mate.assign(r.n(), -1);
  return r;
}

Instance without_values(const Instance& inst) {
  Instance r = inst;
  r.values.clear();
  for (auto& e : r.events) e.value = -1;
  return r;
}

Instance as_abstract(const Instance& inst) {
  Instance r = inst;
  r.kind = Kind::abstract;
  r.trace.clear();
  return r;
}

Instance with_mate(const Instance& inst, std::vector<int> mate) {
  Instance r = inst;
  r.mate = std::move(mate);
  r.has_rf = std::any_of(r.mate.begin(), r.mate.end(), [](int x) { return x >= 0; });
  return r;
}

}  // namespace chanlin
