#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "factory/core/component.hpp"
#include "factory/core/graph.hpp"
#include "factory/core/rules.hpp"
#include "factory/core/state.hpp"
#include "factory/core/time.hpp"

namespace factory::ia {

using core::ComponentId;
using core::DeviceState;
using core::Signal;
using core::SignalMapping;
using core::TimePoint;
using SpatialVariationSet = core::VariationSet;

// Closed device taxonomy; programmable controllers are not modelled.
enum class DeviceKind { Part, Actuator, Sensor };

std::string_view to_string(DeviceKind kind);
std::optional<DeviceKind> parse_device_kind(std::string_view text);

struct DiscreteMaterial {
  std::optional<std::string> identity;  // e.g. a serial number on a bottle cap

  friend bool operator==(const DiscreteMaterial&, const DiscreteMaterial&) = default;
};

struct AnalogMaterial {
  std::string unit;
  double quantity = 0.0;

  friend bool operator==(const AnalogMaterial&, const AnalogMaterial&) = default;
};

using MaterialKind = std::variant<DiscreteMaterial, AnalogMaterial>;

struct Material {
  ComponentId id;
  MaterialKind kind;
};

// Throws InvalidArgument for a negative analog quantity.
Material make_material(ComponentId id, MaterialKind kind);

// Throws DuplicateKey when two discrete materials carry the same identity.
void validate_materials(std::span<const Material> materials);

// Concrete state change of one device. Events never carry a DontCare signal.
class PhysicalEvent {
 public:
  const ComponentId& device() const noexcept { return device_; }
  DeviceKind kind() const noexcept { return kind_; }
  TimePoint timepoint() const noexcept { return timepoint_; }
  const DeviceState& state() const noexcept { return state_; }

  core::StateChangeEvent as_state_change() const { return {device_, timepoint_, state_}; }

  friend bool operator==(const PhysicalEvent&, const PhysicalEvent&) = default;

 private:
  friend PhysicalEvent make_event(ComponentId, DeviceKind, TimePoint, DeviceState);
  PhysicalEvent(ComponentId device, DeviceKind kind, TimePoint t, DeviceState state)
      : device_(std::move(device)), kind_(kind), timepoint_(t), state_(std::move(state)) {}

  ComponentId device_;
  DeviceKind kind_;
  TimePoint timepoint_;
  DeviceState state_;
};

// Throws AbstractStateInEvent when `state` carries DontCare.
PhysicalEvent make_event(ComponentId device, DeviceKind kind, TimePoint t, DeviceState state);

// Throws DontCareInput for Signal::DontCare.
DeviceState map_signal(const SignalMapping& mapping, Signal signal);

// Names equal, and the pattern's signal is DontCare or equal to the actual one.
bool state_matches(const DeviceState& spec, const DeviceState& actual) noexcept;

enum class RelationshipKind { Spatial, Temporal, SpatioTemporal };

std::string_view to_string(RelationshipKind kind);
RelationshipKind relationship_kind(const core::Relationship& relationship) noexcept;

// Temporal or Spatial when every annotation is of that kind, SpatioTemporal when both
// occur, nullopt for an empty graph. Throws MissingAnnotation for a plain edge.
std::optional<RelationshipKind> classify_topology(const core::AnnotatedGraph& graph);

// Well-known solenoid, light sensor and gripper states.
namespace states {

inline constexpr std::string_view kActive = "Active";
inline constexpr std::string_view kPassive = "Passive";
inline constexpr std::string_view kObstructed = "Obstructed";
inline constexpr std::string_view kUnobstructed = "Unobstructed";
inline constexpr std::string_view kGripped = "Gripped";
inline constexpr std::string_view kReleased = "Released";

DeviceState active(Signal signal = Signal::DontCare);
DeviceState passive(Signal signal = Signal::DontCare);
DeviceState obstructed(Signal signal = Signal::DontCare);
DeviceState unobstructed(Signal signal = Signal::DontCare);
DeviceState gripped(Signal signal = Signal::DontCare);
DeviceState released(Signal signal = Signal::DontCare);

}  // namespace states

namespace mappings {

SignalMapping high_solenoid();      // High -> ActiveHigh, Low -> PassiveLow
SignalMapping low_solenoid();       // High -> PassiveHigh, Low -> ActiveLow
SignalMapping high_light_sensor();  // High -> ObstructedHigh, Low -> UnobstructedLow
SignalMapping low_light_sensor();   // High -> UnobstructedHigh, Low -> ObstructedLow
SignalMapping high_grip_sensor();   // High -> GrippedHigh, Low -> ReleasedLow

}  // namespace mappings

}  // namespace factory::ia
