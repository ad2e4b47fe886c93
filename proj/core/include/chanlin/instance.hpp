#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chanlin {

using Cap = std::uint64_t;
inline constexpr Cap kInf = std::numeric_limits<Cap>::max();

enum class Op : std::uint8_t { snd, rcv };
enum class Kind : std::uint8_t { abstract, trace };

// Malformed text or an instance that breaks a structural invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An algorithm was asked to run outside its applicability conditions.
struct Refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Event {
  std::uint64_t id = 0;
  int thread = 0;   // index into Instance::threads
  Op op = Op::snd;
  int channel = 0;  // index into Instance::channels
  int value = -1;   // index into Instance::values, -1 when absent
  int pos = 0;      // position in its thread

  bool operator==(const Event&) const = default;
};

// Events are stored canonically: grouped by thread (threads in token order),
// each group in program order. The dense index of an event is its slot here.
class Instance {
 public:
  Kind kind = Kind::abstract;
  std::vector<std::string> threads;
  std::vector<std::string> channels;
  std::vector<Cap> caps;
  std::vector<std::string> values;  // sorted, distinct
  std::vector<Event> events;
  std::vector<int> thread_begin;    // size threads+1
  std::vector<int> trace;           // kind trace: global order of event indices
  bool has_rf = false;
  std::vector<int> mate;            // rf partner of each event, -1 when unmatched

  int n() const { return static_cast<int>(events.size()); }
  int t() const { return static_cast<int>(threads.size()); }
  int m() const { return static_cast<int>(channels.size()); }
  int thread_size(int tau) const { return thread_begin[tau + 1] - thread_begin[tau]; }
  int at(int tau, int pos) const { return thread_begin[tau] + pos; }
  int pred(int e) const { return events[e].pos == 0 ? -1 : e - 1; }
  int succ(int e) const {
    return events[e].pos + 1 == thread_size(events[e].thread) ? -1 : e + 1;
  }
  bool is_sync(int ch) const { return caps[ch] == 0; }
  bool has_all_values() const;
  std::optional<int> index_of(std::uint64_t id) const;

  bool operator==(const Instance& o) const;
};

bool token_less(std::string_view a, std::string_view b);

// Collects tokens in any order, then canonicalizes and validates.
class InstanceBuilder {
 public:
  explicit InstanceBuilder(Kind kind = Kind::abstract) : kind_(kind) {}

  void set_kind(Kind kind) { kind_ = kind; }
  void channel(const std::string& name, Cap cap, int line = 0);
  void event(std::uint64_t id, const std::string& thread, Op op, const std::string& channel,
             std::optional<std::string> value = std::nullopt, int line = 0);
  void rf(std::uint64_t snd, std::uint64_t rcv, int line = 0);
  Instance build() const;

 private:
  struct RawEvent {
    std::uint64_t id;
    std::string thread;
    Op op;
    std::string channel;
    std::optional<std::string> value;
    int line;
  };
  struct RawRf {
    std::uint64_t snd, rcv;
    int line;
  };
  Kind kind_;
  std::vector<std::pair<std::string, Cap>> channels_;
  std::unordered_map<std::string, int> channel_line_;
  std::vector<RawEvent> events_;
  std::vector<RawRf> rf_;
};

Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::string& path);
void serialize_instance(const Instance& inst, std::ostream& out);
std::string serialize_instance(const Instance& inst);

std::string cap_text(Cap cap);

// Copies with parts removed; the result stays canonical.
Instance without_rf(const Instance& inst);
Instance without_values(const Instance& inst);
Instance as_abstract(const Instance& inst);
Instance with_mate(const Instance& inst, std::vector<int> mate);

}  // namespace chanlin
