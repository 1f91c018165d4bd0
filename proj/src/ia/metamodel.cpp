#include "factory/ia/metamodel.hpp"

#include <set>

#include "factory/core/error.hpp"

namespace factory::ia {

std::string_view to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::Part: return "Part";
    case DeviceKind::Actuator: return "Actuator";
    case DeviceKind::Sensor: return "Sensor";
  }
  return "Part";
}

std::optional<DeviceKind> parse_device_kind(std::string_view text) {
  if (text == "Part") return DeviceKind::Part;
  if (text == "Actuator") return DeviceKind::Actuator;
  if (text == "Sensor") return DeviceKind::Sensor;
  return std::nullopt;
}

Material make_material(ComponentId id, MaterialKind kind) {
  if (const auto* analog = std::get_if<AnalogMaterial>(&kind); analog && !(analog->quantity >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "analog material '" + id.str() + "' has a negative quantity");
  }
  return Material{std::move(id), std::move(kind)};
}

void validate_materials(std::span<const Material> materials) {
  std::set<std::string> identities;
  for (const auto& m : materials) {
    const auto* discrete = std::get_if<DiscreteMaterial>(&m.kind);
    if (discrete && discrete->identity && !identities.insert(*discrete->identity).second) {
      throw Error(ErrorCode::DuplicateKey, "material identity '" + *discrete->identity + "'");
    }
  }
}

PhysicalEvent make_event(ComponentId device, DeviceKind kind, TimePoint t, DeviceState state) {
  if (state.is_abstract()) {
    throw Error(ErrorCode::AbstractStateInEvent,
                device.str() + " event carries abstract state '" + state.name + "'");
  }
  return PhysicalEvent(std::move(device), kind, t, std::move(state));
}

DeviceState map_signal(const SignalMapping& mapping, Signal signal) {
  switch (signal) {
    case Signal::High: return mapping.on_high();
    case Signal::Low: return mapping.on_low();
    case Signal::DontCare: break;
  }
  throw Error(ErrorCode::DontCareInput, "cannot map a don't-care signal");
}

bool state_matches(const DeviceState& spec, const DeviceState& actual) noexcept {
  return spec.name == actual.name && (spec.is_abstract() || spec.signal == actual.signal);
}

std::string_view to_string(RelationshipKind kind) {
  switch (kind) {
    case RelationshipKind::Spatial: return "Spatial";
    case RelationshipKind::Temporal: return "Temporal";
    case RelationshipKind::SpatioTemporal: return "SpatioTemporal";
  }
  return "Temporal";
}

RelationshipKind relationship_kind(const core::Relationship& relationship) noexcept {
  return std::holds_alternative<core::SpatialRelation>(relationship) ? RelationshipKind::Spatial
                                                                     : RelationshipKind::Temporal;
}

std::optional<RelationshipKind> classify_topology(const core::AnnotatedGraph& graph) {
  bool temporal = false;
  bool spatial = false;
  for (const auto& e : graph.edges()) {
    if (!e.annotation) {
      throw Error(ErrorCode::MissingAnnotation, e.source.str() + " -> " + e.target.str());
    }
    if (relationship_kind(*e.annotation) == RelationshipKind::Spatial) {
      spatial = true;
    } else {
      temporal = true;
    }
  }
  if (temporal && spatial) return RelationshipKind::SpatioTemporal;
  if (spatial) return RelationshipKind::Spatial;
  if (temporal) return RelationshipKind::Temporal;
  return std::nullopt;
}

namespace states {

DeviceState active(Signal signal) { return {std::string(kActive), signal}; }
DeviceState passive(Signal signal) { return {std::string(kPassive), signal}; }
DeviceState obstructed(Signal signal) { return {std::string(kObstructed), signal}; }
DeviceState unobstructed(Signal signal) { return {std::string(kUnobstructed), signal}; }
DeviceState gripped(Signal signal) { return {std::string(kGripped), signal}; }
DeviceState released(Signal signal) { return {std::string(kReleased), signal}; }

}  // namespace states

namespace mappings {

SignalMapping high_solenoid() { return {states::active(Signal::High), states::passive(Signal::Low)}; }
SignalMapping low_solenoid() { return {states::passive(Signal::High), states::active(Signal::Low)}; }
SignalMapping high_light_sensor() {
  return {states::obstructed(Signal::High), states::unobstructed(Signal::Low)};
}
SignalMapping low_light_sensor() {
  return {states::unobstructed(Signal::High), states::obstructed(Signal::Low)};
}
SignalMapping high_grip_sensor() { return {states::gripped(Signal::High), states::released(Signal::Low)}; }

}  // namespace mappings

}  // namespace factory::ia
