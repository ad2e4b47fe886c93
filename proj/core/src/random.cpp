#include <algorithm>
#include <deque>
#include <random>

#include "chanlin/generators.hpp"
#include "chanlin/wellformed.hpp"

namespace chanlin {

namespace {

struct Action {
  enum { snd, rcv, pair } kind;
  int channel;
};

}  // namespace

PositiveInstance random_positive(const RandomParams& p) {
  if (p.events < 0 || p.threads < 1 || p.channels < 1 || p.cap_menu.empty() || p.value_count < 0)
    throw ValidationError("invalid random instance parameters");
  std::mt19937_64 rng(p.seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::vector<Cap> caps(p.channels);
  for (auto& c : caps) c = p.cap_menu[pick(p.cap_menu.size())];
  bool any_async = std::any_of(caps.begin(), caps.end(), [](Cap c) { return c > 0; });
  if (!any_async && (p.events % 2 != 0 || p.threads < 2)) {
    std::vector<Cap> async;
    for (Cap c : p.cap_menu)
      if (c > 0) async.push_back(c);
    if (async.empty()) throw ValidationError("synchronous-only instance needs an even event count and two threads");
    caps.back() = async[pick(async.size())];
  }

  InstanceBuilder b(Kind::trace);
  for (int c = 0; c < p.channels; ++c) b.channel("c" + std::to_string(c), caps[c]);
  std::vector<std::deque<int>> queues(p.channels);  // value index, -1 without values
  std::uint64_t next_id = 1;
  auto value_of = [&](int v) {
    return v < 0 ? std::nullopt : std::optional<std::string>("v" + std::to_string(v));
  };
  auto emit = [&](int thread, Op op, int ch, int v) {
    b.event(next_id++, "t" + std::to_string(thread), op, "c" + std::to_string(ch), value_of(v));
  };

  int remaining = p.events;
  std::vector<Action> enabled;
  while (remaining > 0) {
    enabled.clear();
    for (int c = 0; c < p.channels; ++c) {
      if (caps[c] == 0) {
        if (remaining >= 2 && p.threads >= 2) enabled.push_back({Action::pair, c});
        continue;
      }
      if (queues[c].size() < caps[c]) enabled.push_back({Action::snd, c});
      if (!queues[c].empty()) enabled.push_back({Action::rcv, c});
    }
    if (enabled.empty()) throw ValidationError("random simulation has no enabled action");
    Action a = enabled[pick(enabled.size())];
    int v = p.value_count > 0 ? static_cast<int>(pick(p.value_count)) : -1;
    int th = static_cast<int>(pick(p.threads));
    switch (a.kind) {
      case Action::snd:
        emit(th, Op::snd, a.channel, v);
        queues[a.channel].push_back(v);
        --remaining;
        break;
      case Action::rcv:
        emit(th, Op::rcv, a.channel, queues[a.channel].front());
        queues[a.channel].pop_front();
        --remaining;
        break;
      case Action::pair: {
        int other = static_cast<int>(pick(p.threads - 1));
        if (other >= th) ++other;
        emit(th, Op::snd, a.channel, v);
        emit(other, Op::rcv, a.channel, v);
        remaining -= 2;
        break;
      }
    }
  }
  Instance trace = b.build();
  return {derive_abstract(trace), trace.trace};
}

int default_mutation_rounds(int events) {
  return std::max(5, (events + 19) / 20);
}

Mutation mutate_rf(const Instance& inst, std::uint64_t seed, std::optional<int> rounds) {
  if (!inst.has_rf) throw ValidationError("mutation needs an instance with rf");
  Mutation out;
  out.rounds = rounds.value_or(default_mutation_rounds(inst.n()));
  if (out.rounds < 0) throw ValidationError("negative mutation rounds");
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::vector<int> mate = inst.mate;
  std::vector<std::vector<int>> sends(inst.m());
  for (int e = 0; e < inst.n(); ++e)
    if (inst.events[e].op == Op::snd) sends[inst.events[e].channel].push_back(e);

  for (int r = 0; r < out.rounds; ++r) {
    std::vector<int> receives;
    for (int e = 0; e < inst.n(); ++e)
      if (inst.events[e].op == Op::rcv && mate[e] >= 0) receives.push_back(e);
    if (receives.empty()) {
      ++out.skipped;
      continue;
    }
    int rcv = receives[pick(receives.size())];
    int snd = mate[rcv];
    const auto& pool = sends[inst.events[rcv].channel];
    if (pool.size() < 2) {
      ++out.skipped;
      continue;
    }
    int other = pool[pick(pool.size() - 1)];
    if (other == snd) other = pool.back();
    if (int other_rcv = mate[other]; other_rcv >= 0) {
      mate[snd] = other_rcv;
      mate[other_rcv] = snd;
    } else {
      mate[snd] = -1;
    }
    mate[other] = rcv;
    mate[rcv] = other;
    ++out.applied;
  }
  if (out.applied == 0) {
    out.instance = inst;
    return out;
  }
  // mutated pairs would generally disagree on values
  out.instance = without_values(with_mate(inst, std::move(mate)));
  out.instance.has_rf = true;
  return out;
}

}  // namespace chanlin
