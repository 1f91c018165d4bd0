#include "factory/sim/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "factory/core/error.hpp"

namespace factory::sim {

namespace dev = station::devices;
namespace st = ia::states;

std::string_view to_string(EjectorPosition p) {
  switch (p) {
    case EjectorPosition::Retracted: return "Retracted";
    case EjectorPosition::Extended: return "Extended";
    case EjectorPosition::MovingOut: return "MovingOut";
    case EjectorPosition::MovingIn: return "MovingIn";
  }
  return "?";
}

std::string_view to_string(ArmPosition p) {
  switch (p) {
    case ArmPosition::AtPickup: return "AtPickup";
    case ArmPosition::AtDropoff: return "AtDropoff";
    case ArmPosition::MovingLeft: return "MovingLeft";
    case ArmPosition::MovingRight: return "MovingRight";
  }
  return "?";
}

// ---- LatencyTable ----

LatencyTable LatencyTable::defaults() {
  LatencyTable t;
  t.set(dev::kStackEjectorExtend, st::kActive, 250);
  t.set(dev::kStackEjectorExtend, st::kPassive, 250);
  t.set(dev::kLoaderPickup, st::kActive, 800);
  t.set(dev::kLoaderDropoff, st::kActive, 800);
  t.set(dev::kVacuumGrip, st::kActive, 150);
  t.set(dev::kEjectAirPulse, st::kActive, 50);
  return t;
}

void LatencyTable::set(std::string_view actuator, std::string_view transition, std::int64_t ms) {
  if (ms < 0) throw Error(ErrorCode::InvalidConfig, "negative latency for " + std::string(actuator));
  table_[{std::string(actuator), std::string(transition)}] = ms;
}

std::int64_t LatencyTable::get(std::string_view actuator, std::string_view transition) const {
  auto it = table_.find({std::string(actuator), std::string(transition)});
  return it == table_.end() ? 0 : it->second;
}

// ---- Simulator ----

double Simulator::Track::position(std::int64_t t) const {
  if (!moving || end <= start) return moving ? target : pos_at_start;
  double f = std::clamp(static_cast<double>(t - start) / static_cast<double>(end - start), 0.0, 1.0);
  return pos_at_start + (target - pos_at_start) * f;
}

Simulator::Simulator(const station::StationCatalog& catalog, SimConfig config)
    : catalog_(&catalog), config_(std::move(config)), rng_(config_.seed) {
  if (config_.stack_count < 0) throw Error(ErrorCode::InvalidConfig, "negative stack count");
  if (config_.jitter_ms < 0) throw Error(ErrorCode::InvalidConfig, "negative jitter");

  for (const auto& fault : config_.faults) {
    std::visit(
        [&](const auto& f) {
          auto kind = catalog_->kind_of(f.device);
          if (!kind) throw Error(ErrorCode::UnknownDevice, f.device.str());
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, LatencyOverride>) {
            if (*kind != DeviceKind::Actuator) throw Error(ErrorCode::UnknownActuator, f.device.str());
            if (f.transition) {
              if (*f.transition != st::kActive && *f.transition != st::kPassive)
                throw Error(ErrorCode::InvalidConfig, "unknown transition " + *f.transition);
              config_.latencies.set(f.device.str(), *f.transition, f.latency_ms);
            } else {
              config_.latencies.set(f.device.str(), st::kActive, f.latency_ms);
              config_.latencies.set(f.device.str(), st::kPassive, f.latency_ms);
            }
          } else if constexpr (std::is_same_v<F, StuckSensor>) {
            if (*kind != DeviceKind::Sensor) throw Error(ErrorCode::InvalidConfig, "not a sensor: " + f.device.str());
            stuck_[f.device] = concrete(f.device, f.state.name);
          } else {
            dropped_.push_back(f.device);
          }
        },
        fault);
  }

  state_.stack_count = config_.stack_count;
  for (const auto& a : catalog_->devices_of(DeviceKind::Actuator)) {
    actuator_states_[a] = ia::map_signal(*catalog_->signal_mapping(a), Signal::Low);
  }
  for (const auto& [sensor, reading] : sensor_readings()) {
    last_reading_[sensor] = reading.name;
    output(ia::make_event(sensor, DeviceKind::Sensor, TimePoint{0}, reading), initial_);
  }
}

DeviceState Simulator::concrete(const ComponentId& sensor, std::string_view name) const {
  auto mapping = catalog_->signal_mapping(sensor);
  if (!mapping) throw Error(ErrorCode::InvalidConfig, "no signal mapping for " + sensor.str());
  auto sig = mapping->signal_for(name);
  if (!sig) throw Error(ErrorCode::InvalidConfig, std::string(name) + " is not a state of " + sensor.str());
  return DeviceState{std::string(name), *sig};
}

std::map<ComponentId, DeviceState> Simulator::sensor_readings() const {
  std::map<ComponentId, DeviceState> r;
  auto put = [&](std::string_view sensor, std::string_view name) {
    auto id = station::id(sensor);
    if (catalog_->kind_of(id) == DeviceKind::Sensor) r.emplace(id, concrete(id, name));
  };
  put(dev::kStackEmpty, state_.stack_count > 0 ? st::kObstructed : st::kUnobstructed);
  put(dev::kStackEjectorExtended, ejector_rest_extended_ ? st::kObstructed : st::kUnobstructed);
  put(dev::kStackEjectorRetracted, ejector_rest_extended_ ? st::kUnobstructed : st::kObstructed);
  put(dev::kLoaderPickedUp, arm_rest_dropoff_ ? st::kUnobstructed : st::kObstructed);
  put(dev::kLoaderDroppedOff, arm_rest_dropoff_ ? st::kObstructed : st::kUnobstructed);
  put(dev::kWorkpieceGripped, state_.gripped ? st::kGripped : st::kReleased);
  return r;
}

bool Simulator::live(const Scheduled& s) const noexcept {
  switch (s.effect) {
    case Effect::EjectorArrive:
      return ejector_.moving && s.token == ejector_.token;
    case Effect::ArmArrive:
      return arm_.moving && s.token == arm_.token;
    case Effect::GripComplete:
      return true;
    case Effect::PulseRelease:
      return state_.pulse_active && s.token == pulse_token_;
  }
  return true;
}

std::optional<TimePoint> Simulator::next_completion() const {
  std::optional<TimePoint> next;
  for (const auto& s : pending_) {
    if (live(s) && (!next || s.at < *next)) next = s.at;
  }
  return next;
}

std::int64_t Simulator::latency(std::string_view actuator, std::string_view transition) {
  std::int64_t base = config_.latencies.get(actuator, transition);
  if (config_.jitter_ms > 0) {
    auto span = static_cast<std::uint64_t>(2 * config_.jitter_ms + 1);
    base += static_cast<std::int64_t>(rng_() % span) - config_.jitter_ms;
  }
  return std::max<std::int64_t>(base, 0);
}

void Simulator::schedule(TimePoint at, Effect effect, std::uint64_t token) {
  pending_.push_back({at, next_seq_++, effect, token});
}

void Simulator::output(PhysicalEvent e, std::vector<PhysicalEvent>& out) {
  if (std::find(dropped_.begin(), dropped_.end(), e.device()) != dropped_.end()) return;
  if (auto it = stuck_.find(e.device()); it != stuck_.end()) {
    // Only the initial report of a stuck sensor gets out, carrying the stuck value.
    if (&out != &initial_) return;
    e = ia::make_event(e.device(), e.kind(), e.timepoint(), it->second);
  }
  out.push_back(std::move(e));
}

void Simulator::emit_actuator(const ComponentId& actuator, const DeviceState& s, std::vector<PhysicalEvent>& out) {
  output(ia::make_event(actuator, DeviceKind::Actuator, state_.clock, s), out);
}

void Simulator::emit_sensor_changes(std::vector<PhysicalEvent>& out) {
  std::vector<std::pair<ComponentId, DeviceState>> changes;
  for (auto& [sensor, reading] : sensor_readings()) {
    if (last_reading_[sensor] != reading.name) changes.emplace_back(sensor, reading);
  }
  // Clearing edges go first so no instant ever shows two exclusive sensors obstructed.
  std::stable_sort(changes.begin(), changes.end(), [](const auto& a, const auto& b) {
    auto clearing = [](const DeviceState& s) { return s.name == st::kUnobstructed || s.name == st::kReleased; };
    return clearing(a.second) && !clearing(b.second);
  });
  for (auto& [sensor, reading] : changes) {
    last_reading_[sensor] = reading.name;
    output(ia::make_event(sensor, DeviceKind::Sensor, state_.clock, reading), out);
  }
}

void Simulator::start_motion(Track& track, double target, std::int64_t full_latency, std::int64_t now,
                             Effect effect) {
  double pos = track.position(now);
  track.pos_at_start = pos;
  track.target = target;
  track.start = now;
  track.end = now + std::llround(std::abs(target - pos) * static_cast<double>(full_latency));
  track.moving = true;
  track.token = ++next_token_;
  schedule(TimePoint{track.end}, effect, track.token);
}

void Simulator::try_schedule_grip(std::int64_t now) {
  if (grip_pending_ || state_.gripped || !state_.vacuum_on || state_.pulse_active) return;
  if (state_.arm_pos != ArmPosition::AtPickup || state_.caps_at_pickup == 0) return;
  grip_pending_ = true;
  schedule(TimePoint{now + latency(dev::kVacuumGrip, st::kActive)}, Effect::GripComplete, 0);
}

void Simulator::release_cap() {
  state_.gripped = false;
  switch (state_.arm_pos) {
    case ArmPosition::AtPickup: ++state_.caps_at_pickup; break;
    case ArmPosition::AtDropoff: ++state_.caps_delivered; break;
    default: ++state_.caps_dropped; break;
  }
}

void Simulator::complete(const Scheduled& s, std::vector<PhysicalEvent>& out) {
  state_.clock = s.at;
  switch (s.effect) {
    case Effect::EjectorArrive: {
      if (!live(s)) return;
      ejector_.moving = false;
      ejector_.pos_at_start = ejector_.target;
      bool extended = ejector_.target > 0.5;
      state_.ejector_pos = extended ? EjectorPosition::Extended : EjectorPosition::Retracted;
      bool was_extended = ejector_rest_extended_;
      ejector_rest_extended_ = extended;
      if (extended && !was_extended && state_.stack_count > 0) {
        --state_.stack_count;
        ++state_.caps_at_pickup;
        ++state_.completed_ejections;
      }
      emit_sensor_changes(out);
      try_schedule_grip(s.at.ms);
      return;
    }
    case Effect::ArmArrive: {
      if (!live(s)) return;
      arm_.moving = false;
      arm_.pos_at_start = arm_.target;
      arm_rest_dropoff_ = arm_.target > 0.5;
      state_.arm_pos = arm_rest_dropoff_ ? ArmPosition::AtDropoff : ArmPosition::AtPickup;
      emit_sensor_changes(out);
      try_schedule_grip(s.at.ms);
      return;
    }
    case Effect::GripComplete: {
      grip_pending_ = false;
      if (!state_.gripped && state_.vacuum_on && !state_.pulse_active && state_.arm_pos == ArmPosition::AtPickup &&
          state_.caps_at_pickup > 0) {
        --state_.caps_at_pickup;
        state_.gripped = true;
        emit_sensor_changes(out);
      }
      return;
    }
    case Effect::PulseRelease: {
      if (!live(s)) return;
      if (state_.gripped) {
        release_cap();
        emit_sensor_changes(out);
      }
      return;
    }
  }
}

void Simulator::run_due(TimePoint until, std::vector<PhysicalEvent>& out) {
  auto later = [](const Scheduled& a, const Scheduled& b) { return std::tie(a.at, a.seq) > std::tie(b.at, b.seq); };
  while (!pending_.empty()) {
    auto it = std::min_element(pending_.begin(), pending_.end(),
                               [&](const Scheduled& a, const Scheduled& b) { return later(b, a); });
    if (it->at > until) break;
    Scheduled s = *it;
    pending_.erase(it);
    complete(s, out);
  }
}

std::vector<PhysicalEvent> Simulator::advance_to(TimePoint t) {
  if (t < state_.clock) {
    throw Error(ErrorCode::TimeRegression,
                "t=" + std::to_string(t.ms) + " before clock " + std::to_string(state_.clock.ms));
  }
  std::vector<PhysicalEvent> out;
  run_due(t, out);
  state_.clock = t;
  return out;
}

std::vector<PhysicalEvent> Simulator::drain() {
  std::vector<PhysicalEvent> out;
  run_due(TimePoint{INT64_MAX}, out);
  return out;
}

std::vector<PhysicalEvent> Simulator::apply(const ComponentId& actuator, Signal signal, TimePoint t) {
  if (catalog_->kind_of(actuator) != DeviceKind::Actuator) throw Error(ErrorCode::UnknownActuator, actuator.str());
  DeviceState next = ia::map_signal(*catalog_->signal_mapping(actuator), signal);
  std::vector<PhysicalEvent> out = advance_to(t);

  DeviceState& current = actuator_states_[actuator];
  if (current == next) return out;
  current = next;
  emit_actuator(actuator, next, out);

  const std::string& name = actuator.str();
  bool active = next.name == st::kActive;
  std::int64_t now = t.ms;

  if (name == dev::kStackEjectorExtend) {
    double target = active ? 1.0 : 0.0;
    bool at_rest_there = !ejector_.moving && ejector_.pos_at_start == target;
    bool heading_there = ejector_.moving && ejector_.target == target;
    if (!at_rest_there && !heading_there) {
      start_motion(ejector_, target, latency(name, next.name), now, Effect::EjectorArrive);
      state_.ejector_pos = active ? EjectorPosition::MovingOut : EjectorPosition::MovingIn;
    }
  } else if (name == dev::kLoaderPickup || name == dev::kLoaderDropoff) {
    if (!active) return out;  // a released valve leaves the arm where it is
    double target = name == dev::kLoaderDropoff ? 1.0 : 0.0;
    bool at_rest_there = !arm_.moving && arm_.pos_at_start == target;
    bool heading_there = arm_.moving && arm_.target == target;
    if (!at_rest_there && !heading_there) {
      start_motion(arm_, target, latency(name, st::kActive), now, Effect::ArmArrive);
      state_.arm_pos = target > 0.5 ? ArmPosition::MovingRight : ArmPosition::MovingLeft;
    }
  } else if (name == dev::kVacuumGrip) {
    state_.vacuum_on = active;
    if (active) {
      try_schedule_grip(now);
    } else if (state_.gripped && !state_.pulse_active) {
      release_cap();
      emit_sensor_changes(out);
    }
  } else if (name == dev::kEjectAirPulse) {
    state_.pulse_active = active;
    if (active) {
      pulse_token_ = ++next_token_;
      schedule(TimePoint{now + latency(name, st::kActive)}, Effect::PulseRelease, pulse_token_);
    } else {
      if (state_.gripped && !state_.vacuum_on) {
        release_cap();
        emit_sensor_changes(out);
      }
      try_schedule_grip(now);
    }
  }
  return out;
}

// ---- scripts ----

void validate_script(const station::StationCatalog& catalog, const CommandScript& script) {
  for (std::size_t i = 0; i < script.size(); ++i) {
    const Command& c = script[i];
    std::string where = "command #" + std::to_string(i) + ": ";
    if (i > 0 && c.time < script[i - 1].time) throw Error(ErrorCode::ScriptError, where + "time goes backwards");
    if (c.time.ms < 0) throw Error(ErrorCode::ScriptError, where + "negative time");
    if (catalog.kind_of(c.actuator) != DeviceKind::Actuator)
      throw Error(ErrorCode::UnknownActuator, where + c.actuator.str());
    if (c.signal == Signal::DontCare) throw Error(ErrorCode::DontCareInput, where + "signal must be High or Low");
  }
}

void sim_run(const station::StationCatalog& catalog, const CommandScript& script, SimConfig config,
             const std::function<void(const PhysicalEvent&)>& sink) {
  Simulator sim(catalog, std::move(config));
  for (const auto& e : sim.initial_events()) sink(e);
  for (std::size_t i = 0; i < script.size(); ++i) {
    const Command& c = script[i];
    std::vector<PhysicalEvent> events;
    try {
      events = sim.apply(c.actuator, c.signal, c.time);
    } catch (const Error& err) {
      throw Error(err.code(), "command #" + std::to_string(i) + ": " + err.detail());
    }
    for (const auto& e : events) sink(e);
  }
  for (const auto& e : sim.drain()) sink(e);
}

std::vector<PhysicalEvent> sim_run(const station::StationCatalog& catalog, const CommandScript& script,
                                   SimConfig config) {
  std::vector<PhysicalEvent> trace;
  sim_run(catalog, script, std::move(config), [&](const PhysicalEvent& e) { trace.push_back(e); });
  return trace;
}

CommandScript nominal_cycle_script(int cycles) {
  CommandScript s;
  auto cmd = [&](std::int64_t t, std::string_view a, Signal sig) { s.push_back({TimePoint{t}, station::id(a), sig}); };
  // Homing: swing out and back so every arm valve has been exercised once.
  cmd(2200, dev::kLoaderDropoff, Signal::High);
  cmd(2400, dev::kLoaderDropoff, Signal::Low);
  cmd(3500, dev::kLoaderPickup, Signal::High);
  cmd(4000, dev::kLoaderPickup, Signal::Low);
  for (int k = 0; k < cycles; ++k) {
    std::int64_t b = 4300 + 4300 * static_cast<std::int64_t>(k);
    cmd(b, dev::kStackEjectorExtend, Signal::High);
    cmd(b + 500, dev::kStackEjectorExtend, Signal::Low);
    cmd(b + 850, dev::kVacuumGrip, Signal::High);
    cmd(b + 2200, dev::kLoaderDropoff, Signal::High);
    cmd(b + 2400, dev::kLoaderDropoff, Signal::Low);
    cmd(b + 3200, dev::kEjectAirPulse, Signal::High);
    cmd(b + 3300, dev::kVacuumGrip, Signal::Low);
    cmd(b + 3400, dev::kEjectAirPulse, Signal::Low);
    cmd(b + 3500, dev::kLoaderPickup, Signal::High);
    cmd(b + 4000, dev::kLoaderPickup, Signal::Low);
  }
  return s;
}

}  // namespace factory::sim
