#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "factory/core/graph.hpp"
#include "factory/core/rules.hpp"
#include "factory/core/time.hpp"
#include "factory/ia/metamodel.hpp"
#include "factory/station/catalog.hpp"

namespace factory::monitor {

using core::ComponentId;
using core::DeviceState;
using core::StateChangeEvent;
using core::TimePoint;

// EventOccurrence: an effect state-change event must occur inside the window.
// StateHolds: the target device's state must equal the effect state at every
// instant of the window (inverse: at no instant).
enum class Semantics { EventOccurrence, StateHolds };

std::string_view to_string(Semantics s);
// "event", "event-occurrence", "state", "state-holds".
std::optional<Semantics> parse_semantics(std::string_view text);

struct MonitorConfig {
  std::int64_t correlation_tolerance_ms = 0;
  core::TimeUnit sequence_unit = core::TimeUnit::Seconds;
  Semantics semantics = Semantics::EventOccurrence;
  // Unset: the largest lookback any rule needs.
  std::optional<std::int64_t> history_horizon_ms;
};

// One annotated edge reduced to a window relative to the cause time.
struct CompiledRule {
  std::string topology;
  std::size_t edge_index = 0;
  ComponentId source;
  ComponentId target;
  DeviceState cause;
  DeviceState effect;
  std::int64_t min_ms = 0;
  std::int64_t max_ms = 0;
  bool inverse = false;
  bool correlation = false;

  friend bool operator==(const CompiledRule&, const CompiledRule&) = default;
};

// Throws MissingAnnotation for a plain edge, UnsupportedAnnotation for a bare
// duration or spatial relation, InvalidRule when a window is not a fixed offset
// from the cause time or min exceeds max, InvalidConfig for a negative tolerance.
std::vector<CompiledRule> compile_rules(const core::AnnotatedGraph& graph, std::string_view topology,
                                        const MonitorConfig& cfg);

enum class Outcome { Satisfied, ViolatedMissing, ViolatedEarly, ViolatedLate, ViolatedForbidden, Pending };

std::string_view to_string(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view text);
bool is_violation(Outcome o) noexcept;

struct Verdict {
  std::string topology;
  std::size_t edge_index = 0;
  ComponentId source;
  ComponentId target;
  StateChangeEvent cause_event;
  std::size_t cause_index = 0;  // position of the cause in the ingested stream
  Outcome outcome = Outcome::Pending;
  std::optional<StateChangeEvent> witness;
  TimePoint decided_at;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Report order: decision time, then topology and edge, then cause position.
bool verdict_order(const Verdict& a, const Verdict& b);
void sort_verdicts(std::vector<Verdict>& verdicts);

// Streaming checker. Events must arrive in nondecreasing time order.
class Monitor {
 public:
  // `known_devices` empty means any device name is accepted.
  Monitor(std::vector<CompiledRule> rules, MonitorConfig cfg, std::set<ComponentId> known_devices = {});

  // Throws OutOfOrderEvent on a time regression, UnknownDevice for an unlisted device.
  std::vector<Verdict> ingest(const StateChangeEvent& e);
  std::vector<Verdict> ingest(const ia::PhysicalEvent& e) { return ingest(e.as_state_change()); }

  // Resolves obligations whose window closed by `end`; the rest are reported Pending.
  // Throws OutOfOrderEvent when `end` precedes the last event.
  std::vector<Verdict> finalize(TimePoint end);

  const std::vector<CompiledRule>& rules() const noexcept { return rules_; }
  std::int64_t history_horizon_ms() const noexcept { return horizon_; }
  std::size_t open_obligations() const noexcept { return open_.size(); }
  std::size_t retained_history() const noexcept { return history_.size(); }

 private:
  struct Seen {
    StateChangeEvent event;
    std::size_t index = 0;
  };

  struct Obligation {
    std::size_t rule = 0;
    Seen cause;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    // event-occurrence
    std::optional<Seen> early;
    // state-holds
    bool armed = false;
    std::optional<Seen> tracked;  // target state while waiting to arm
    std::optional<Seen> initial;  // target state at lo
    bool failed = false;
    std::optional<Seen> failure;
  };

  Verdict make_verdict(const Obligation& ob, Outcome outcome, const std::optional<Seen>& witness,
                       std::int64_t decided_at) const;
  void open(std::size_t rule, const Seen& cause, std::vector<Verdict>& out);
  bool match_event(Obligation& ob, const Seen& e, std::vector<Verdict>& out);
  Verdict expire_event(const Obligation& ob, std::int64_t at) const;
  void arm(Obligation& ob, const std::optional<Seen>& initial);
  void observe_state(Obligation& ob, const Seen& e);
  Verdict expire_state(const Obligation& ob, std::int64_t at) const;
  std::optional<Seen> state_at(const ComponentId& device, std::int64_t t) const;

  std::vector<CompiledRule> rules_;
  MonitorConfig cfg_;
  std::set<ComponentId> known_;
  std::int64_t horizon_ = 0;
  std::map<ComponentId, std::vector<std::size_t>> by_source_;

  std::vector<Obligation> open_;
  std::deque<Seen> history_;
  std::map<ComponentId, Seen> evicted_last_;
  std::map<ComponentId, Seen> current_;
  std::size_t next_index_ = 0;
  std::optional<std::int64_t> last_time_;
};

// Folds ingest over the trace and finalizes at the last timestamp; sorted report.
std::vector<Verdict> check_trace(const std::vector<CompiledRule>& rules, const std::vector<StateChangeEvent>& trace,
                                 const MonitorConfig& cfg, std::set<ComponentId> known_devices = {});
std::vector<Verdict> check_trace(const station::StationCatalog& catalog, const core::AnnotatedGraph& topology,
                                 const std::vector<ia::PhysicalEvent>& trace, const MonitorConfig& cfg,
                                 std::string_view topology_name = "topology");

// Rules of the named topologies (all when empty), labelled with their names.
std::vector<CompiledRule> compile_catalog_rules(const station::StationCatalog& catalog,
                                                const std::vector<station::TopologyName>& names,
                                                const MonitorConfig& cfg);

}  // namespace factory::monitor
