#include "chanlin/wellformed.hpp"

namespace chanlin {

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::capacity: return "capacity";
    case ViolationKind::sync: return "sync";
    case ViolationKind::value: return "value";
    case ViolationKind::rf: return "rf";
  }
  return "?";
}

TraceChecker::TraceChecker(const Instance& inst, bool check_rf)
    : inst_(&inst), check_rf_(check_rf), queues_(inst.m()) {}

std::optional<Violation> TraceChecker::feed(int e) {
  const Event& ev = inst_->events[e];
  std::size_t here = ++fed_;
  auto values_differ = [&](int a) {
    int va = inst_->events[a].value;
    return va >= 0 && ev.value >= 0 && va != ev.value;
  };

  if (pending_ != -1) {
    const Event& s = inst_->events[pending_];
    if (ev.op != Op::rcv || ev.channel != s.channel)
      return Violation{ViolationKind::sync, pending_pos_, "synchronous send not immediately received"};
    if (ev.thread == s.thread)
      return Violation{ViolationKind::sync, here, "synchronous receive on the sending thread"};
    if (values_differ(pending_)) return Violation{ViolationKind::value, here, "received value differs from sent value"};
    if (check_rf_ && inst_->mate[e] != pending_)
      return Violation{ViolationKind::rf, here, "receive does not read from its rf source"};
    pending_ = -1;
    return std::nullopt;
  }

  if (inst_->is_sync(ev.channel)) {
    if (ev.op == Op::rcv) return Violation{ViolationKind::sync, here, "synchronous receive without preceding send"};
    pending_ = e;
    pending_pos_ = here;
    return std::nullopt;
  }

  auto& q = queues_[ev.channel];
  if (ev.op == Op::snd) {
    if (q.size() >= inst_->caps[ev.channel]) return Violation{ViolationKind::capacity, here, "channel over capacity"};
    q.push_back(e);
    return std::nullopt;
  }
  if (q.empty()) return Violation{ViolationKind::capacity, here, "receive from empty channel"};
  if (values_differ(q.front())) return Violation{ViolationKind::value, here, "received value differs from sent value"};
  if (check_rf_ && inst_->mate[e] != q.front())
    return Violation{ViolationKind::rf, here, "receive does not read from its rf source"};
  q.pop_front();
  return std::nullopt;
}

std::optional<Violation> TraceChecker::finish() const {
  if (pending_ != -1) return Violation{ViolationKind::sync, pending_pos_, "synchronous send not immediately received"};
  return std::nullopt;
}

std::optional<Violation> check_well_formed(const Instance& inst, std::span<const int> order, bool check_rf) {
  TraceChecker checker(inst, check_rf);
  for (int e : order)
    if (auto v = checker.feed(e)) return v;
  return checker.finish();
}

std::vector<int> derive_rf(const Instance& inst, std::span<const int> order) {
  std::vector<std::vector<int>> sends(inst.m());
  std::vector<std::size_t> taken(inst.m(), 0);
  std::vector<int> mate(inst.n(), -1);
  for (int e : order) {
    int ch = inst.events[e].channel;
    if (inst.events[e].op == Op::snd) {
      sends[ch].push_back(e);
    } else if (taken[ch] < sends[ch].size()) {
      int s = sends[ch][taken[ch]++];
      mate[s] = e;
      mate[e] = s;
    }
  }
  return mate;
}

Instance derive_abstract(const Instance& trace_inst) {
  Instance r = as_abstract(trace_inst);
  r.mate = derive_rf(trace_inst, trace_inst.trace);
  r.has_rf = true;
  return r;
}

std::optional<std::string> verify_witness(const Instance& inst, std::span<const int> order) {
  if (static_cast<int>(order.size()) != inst.n()) return "witness length differs from event count";
  std::vector<int> next(inst.t(), 0);
  for (int e : order) {
    if (e < 0 || e >= inst.n()) return "witness references unknown event";
    const Event& ev = inst.events[e];
    if (ev.pos != next[ev.thread]) return "witness breaks program order at event " + std::to_string(ev.id);
    ++next[ev.thread];
  }
  if (auto v = check_well_formed(inst, order, false))
    return std::string("witness not well-formed: ") + to_string(v->kind) + " at position " +
           std::to_string(v->position);
  if (inst.has_rf && derive_rf(inst, order) != inst.mate) return "witness reads-from differs from instance rf";
  return std::nullopt;
}

}  // namespace chanlin
