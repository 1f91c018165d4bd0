#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "factory/core/state.hpp"
#include "factory/core/time.hpp"
#include "factory/ia/metamodel.hpp"
#include "factory/station/catalog.hpp"

namespace factory::sim {

using core::ComponentId;
using core::DeviceState;
using core::Signal;
using core::TimePoint;
using ia::DeviceKind;
using ia::PhysicalEvent;

enum class EjectorPosition { Retracted, Extended, MovingOut, MovingIn };
enum class ArmPosition { AtPickup, AtDropoff, MovingLeft, MovingRight };

std::string_view to_string(EjectorPosition p);
std::string_view to_string(ArmPosition p);

struct StationState {
  EjectorPosition ejector_pos = EjectorPosition::Retracted;
  ArmPosition arm_pos = ArmPosition::AtPickup;
  bool vacuum_on = false;
  bool gripped = false;
  bool pulse_active = false;
  int stack_count = 0;
  TimePoint clock{};

  int caps_at_pickup = 0;       // ejected caps waiting for the gripper
  int caps_delivered = 0;       // released in the drop-off area
  int caps_dropped = 0;         // released while the arm was moving
  int completed_ejections = 0;  // extensions that pushed a cap out
};

// Motion and effect latencies in milliseconds, keyed by (actuator, state entered).
class LatencyTable {
 public:
  // Ejector 250 each way, arm swing 800, vacuum grip 150, eject pulse 50.
  static LatencyTable defaults();

  void set(std::string_view actuator, std::string_view transition, std::int64_t ms);
  // Zero for unlisted transitions.
  std::int64_t get(std::string_view actuator, std::string_view transition) const;
  const std::map<std::pair<std::string, std::string>, std::int64_t>& entries() const noexcept { return table_; }

 private:
  std::map<std::pair<std::string, std::string>, std::int64_t> table_;
};

// Replaces the latency of one actuator; both transitions when `transition` is empty.
struct LatencyOverride {
  ComponentId device;
  std::optional<std::string> transition;
  std::int64_t latency_ms = 0;

  friend bool operator==(const LatencyOverride&, const LatencyOverride&) = default;
};

// The sensor keeps reporting `state` no matter what happens physically.
struct StuckSensor {
  ComponentId device;
  DeviceState state;

  friend bool operator==(const StuckSensor&, const StuckSensor&) = default;
};

// Events of the device are removed from the output; the station still acts on them.
struct DropEvents {
  ComponentId device;

  friend bool operator==(const DropEvents&, const DropEvents&) = default;
};

using FaultSpec = std::variant<LatencyOverride, StuckSensor, DropEvents>;

struct Command {
  TimePoint time;
  ComponentId actuator;
  Signal signal = Signal::Low;

  friend bool operator==(const Command&, const Command&) = default;
};

using CommandScript = std::vector<Command>;

struct SimConfig {
  int stack_count = 5;
  LatencyTable latencies = LatencyTable::defaults();
  std::vector<FaultSpec> faults;
  std::uint64_t seed = 0;
  int jitter_ms = 0;  // uniform +-jitter on every motion latency; 0 disables
};

// Deterministic discrete-event model of the Cap Dispenser. Construction puts the
// station at rest (ejector retracted, arm at pickup, vacuum off, clock 0) and
// records the initial sensor events.
class Simulator {
 public:
  Simulator(const station::StationCatalog& catalog, SimConfig config);

  const StationState& state() const noexcept { return state_; }
  const std::vector<PhysicalEvent>& initial_events() const noexcept { return initial_; }

  // Runs completions due at or before `t`, then drives `actuator` with `signal`.
  // Returns every event emitted on the way, in time order.
  // Throws UnknownActuator, TimeRegression, DontCareInput.
  std::vector<PhysicalEvent> apply(const ComponentId& actuator, Signal signal, TimePoint t);

  // Runs completions due at or before `t` and moves the clock to `t`.
  std::vector<PhysicalEvent> advance_to(TimePoint t);

  // Runs every pending completion.
  std::vector<PhysicalEvent> drain();

  // Earliest completion still in effect.
  std::optional<TimePoint> next_completion() const;

  // Sensor values recomputed from the physical state (unaffected by faults).
  std::map<ComponentId, DeviceState> sensor_readings() const;

 private:
  enum class Effect { EjectorArrive, ArmArrive, GripComplete, PulseRelease };

  struct Scheduled {
    TimePoint at;
    std::uint64_t seq;
    Effect effect;
    std::uint64_t token;  // motion or pulse generation; stale entries are ignored
  };

  // Position along a two-ended track: 0 = rest A, 1 = rest B.
  struct Track {
    double pos_at_start = 0.0;
    double target = 0.0;
    std::int64_t start = 0;
    std::int64_t end = 0;
    bool moving = false;
    std::uint64_t token = 0;

    double position(std::int64_t t) const;
  };

  void schedule(TimePoint at, Effect effect, std::uint64_t token);
  // False once a newer motion or pulse superseded the entry.
  bool live(const Scheduled& s) const noexcept;
  void run_due(TimePoint until, std::vector<PhysicalEvent>& out);
  void complete(const Scheduled& s, std::vector<PhysicalEvent>& out);
  void start_motion(Track& track, double target, std::int64_t full_latency, std::int64_t now, Effect effect);
  void try_schedule_grip(std::int64_t now);
  void release_cap();
  void emit_actuator(const ComponentId& actuator, const DeviceState& state, std::vector<PhysicalEvent>& out);
  void emit_sensor_changes(std::vector<PhysicalEvent>& out);
  void output(PhysicalEvent e, std::vector<PhysicalEvent>& out);
  std::int64_t latency(std::string_view actuator, std::string_view transition);
  DeviceState concrete(const ComponentId& sensor, std::string_view name) const;

  const station::StationCatalog* catalog_;
  SimConfig config_;
  StationState state_;
  std::vector<PhysicalEvent> initial_;

  Track ejector_;
  Track arm_;
  bool ejector_rest_extended_ = false;
  bool arm_rest_dropoff_ = false;
  bool grip_pending_ = false;
  std::uint64_t pulse_token_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t next_token_ = 0;
  std::vector<Scheduled> pending_;

  std::map<ComponentId, DeviceState> actuator_states_;
  std::map<ComponentId, std::string> last_reading_;  // physical truth, by state name
  std::map<ComponentId, DeviceState> stuck_;
  std::vector<ComponentId> dropped_;
  std::mt19937_64 rng_;
};

// Throws ScriptError for decreasing times, UnknownActuator, DontCareInput.
void validate_script(const station::StationCatalog& catalog, const CommandScript& script);

// Initial events, then every command, then the remaining completions.
// Errors carry the failing command index.
std::vector<PhysicalEvent> sim_run(const station::StationCatalog& catalog, const CommandScript& script,
                                   SimConfig config);

// Streaming form: every event goes to `sink` as soon as it is produced.
void sim_run(const station::StationCatalog& catalog, const CommandScript& script, SimConfig config,
             const std::function<void(const PhysicalEvent&)>& sink);

// Extend/retract, grip, swing to drop-off, release and swing back, `cycles` times,
// preceded by a homing swing. Timed so the station topologies hold with default latencies.
CommandScript nominal_cycle_script(int cycles = 2);

}  // namespace factory::sim
