#include "factory/station/catalog.hpp"

#include <algorithm>
#include <cctype>

#include "factory/core/error.hpp"
#include "factory/station/measurements.hpp"

namespace factory::station {

using core::BeMap;
using core::Box3D;
using core::ComponentValue;
using core::EdgeAnn;
using core::Signal;
using core::TemporalConstraint;
using core::TemporalCorrelation;
using core::TimeDuration;
using core::TimeDurationRange;
namespace st = ia::states;
namespace mp = ia::mappings;

ComponentId id(std::string_view name) { return ComponentId(std::string(name)); }

std::string_view to_string(TopologyName name) {
  switch (name) {
    case TopologyName::ProcessSequence: return "process-sequence";
    case TopologyName::Causality: return "causality";
    case TopologyName::Avoidance: return "avoidance";
  }
  return "causality";
}

std::optional<TopologyName> parse_topology_name(std::string_view text) {
  std::string folded;
  for (char c : text) {
    if (c != '-' && c != '_' && c != ' ') {
      folded += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (folded == "processsequence") return TopologyName::ProcessSequence;
  if (folded == "causality") return TopologyName::Causality;
  if (folded == "avoidance") return TopologyName::Avoidance;
  return std::nullopt;
}

std::optional<DeviceKind> StationCatalog::kind_of(const ComponentId& device) const {
  auto it = devices.find(device);
  if (it == devices.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::vector<ComponentId> StationCatalog::devices_of(DeviceKind kind) const {
  std::vector<ComponentId> out;
  for (const auto& [device, k] : devices) {
    if (k == kind) out.push_back(device);
  }
  return out;
}

const BeMap& StationCatalog::description(const ComponentId& device) const {
  auto it = descriptions.find(device);
  if (it == descriptions.end()) {
    throw Error(ErrorCode::UnknownDevice, device.str());
  }
  return it->second;
}

std::optional<core::SignalMapping> StationCatalog::signal_mapping(const ComponentId& device) const {
  auto it = descriptions.find(device);
  if (it == descriptions.end()) return std::nullopt;
  const auto* value = it->second.find(id(keys::kSignalMapping));
  if (value == nullptr) return std::nullopt;
  if (const auto* m = value->get_if<core::SignalMapping>()) return *m;
  return std::nullopt;
}

std::optional<Box3D> StationCatalog::location(const ComponentId& device) const {
  auto it = descriptions.find(device);
  if (it == descriptions.end()) return std::nullopt;
  const auto* value = it->second.find(id(keys::kSpatialLocation));
  if (value == nullptr) return std::nullopt;
  if (const auto* b = value->get_if<Box3D>()) return *b;
  return std::nullopt;
}

std::optional<ComponentId> StationCatalog::part_association(const ComponentId& device) const {
  auto it = descriptions.find(device);
  if (it == descriptions.end()) return std::nullopt;
  const auto* value = it->second.find(id(keys::kPartAssociation));
  if (value == nullptr) return std::nullopt;
  if (const auto* s = value->get_if<std::string>()) return ComponentId(*s);
  return std::nullopt;
}

const Topology& StationCatalog::topology(TopologyName name) const {
  auto it = topologies.find(name);
  if (it == topologies.end()) {
    throw Error(ErrorCode::InvalidArgument, "catalog has no " + std::string(to_string(name)) + " topology");
  }
  return it->second;
}

bool StationCatalog::is_synthetic(const ComponentId& device, std::string_view key) const {
  return synthetic_entries.count({device, std::string(key)}) > 0;
}

namespace {

ComponentValue text(std::string_view s) { return ComponentValue(ComponentValue::Payload(std::string(s))); }
ComponentValue integer(std::int64_t n) { return ComponentValue(ComponentValue::Payload(n)); }
ComponentValue value_of(Box3D b) { return ComponentValue(ComponentValue::Payload(b)); }
ComponentValue value_of(core::SignalMapping m) { return ComponentValue(ComponentValue::Payload(std::move(m))); }
ComponentValue value_of(core::VariationSet v) { return ComponentValue(ComponentValue::Payload(std::move(v))); }

// Well-known values.
const char* const kSolenoid = "Solenoid";
const char* const kLightSensor = "Light Sensor";
const char* const kContactSensor = "Contact Sensor";
const char* const kVacuumSensor = "Vacuum Sensor";

class CatalogBuilder {
 public:
  explicit CatalogBuilder(StationCatalog& catalog) : catalog_(catalog) {}

  // Entry keys flagged with `synthetic` were chosen for this model, not measured or documented.
  void add(std::string_view device, DeviceKind kind,
           std::vector<std::pair<std::string_view, ComponentValue>> entries,
           std::initializer_list<std::string_view> synthetic = {}) {
    std::vector<BeMap::Entry> kv;
    kv.emplace_back(id(keys::kDeviceCategory), text(ia::to_string(kind)));
    for (auto& [key, value] : entries) {
      kv.emplace_back(id(key), std::move(value));
    }
    catalog_.devices.emplace(id(device), kind);
    catalog_.descriptions.emplace(id(device), BeMap::build(std::move(kv)));
    for (auto key : synthetic) {
      catalog_.synthetic_entries.emplace(id(device), std::string(key));
    }
  }

 private:
  StationCatalog& catalog_;
};

Box3D extend_sensor_box() {
  using namespace measure;
  return Box3D::from_anchor(x::kExtendRetractSensorLeft, y::kExtendSensorFront, z::kExtendRetractSensorBottom,
                            width::kExtendRetractSensor, depth::kExtendRetractSensor,
                            height::kExtendRetractSensor);
}

Box3D retract_sensor_box() {
  using namespace measure;
  return Box3D::from_anchor(x::kExtendRetractSensorLeft, y::kRetractSensorFront, z::kExtendRetractSensorBottom,
                            width::kExtendRetractSensor, depth::kExtendRetractSensor,
                            height::kExtendRetractSensor);
}

Box3D stack_ejector_box() {
  using namespace measure;
  return Box3D::from_anchor(x::kStackEjectorLeft, y::kStackEjectorFront, z::kStackEjectorBottom,
                            width::kStackEjector, depth::kStackEjector, height::kStackEjector);
}

EdgeAnn correlation(std::string_view source, std::string_view target, core::DeviceState cause,
                    std::int64_t delay, core::DeviceState effect) {
  auto duration = TimeDuration::relative_to(cause.name, delay);
  return EdgeAnn{id(source), id(target), TemporalCorrelation{std::move(cause), std::move(duration), std::move(effect)}};
}

EdgeAnn constraint(std::string_view source, std::string_view target, core::DeviceState cause, std::int64_t lo,
                   std::int64_t hi, core::DeviceState effect, bool inverse = false) {
  auto range = TimeDurationRange::relative_to(cause.name, lo, hi);
  return EdgeAnn{id(source), id(target),
                 TemporalConstraint{std::move(cause), std::move(range), std::move(effect), inverse}};
}

}  // namespace

Topology build_topology(TopologyName name) {
  using namespace devices;
  Topology t{name, {}, {}};
  auto push = [&](EdgeAnn e, bool synthetic) {
    t.graph.add(std::move(e));
    t.synthetic.push_back(synthetic);
  };
  switch (name) {
    case TopologyName::ProcessSequence:
      // Delays in whole seconds (the catalog's sequence unit).
      push(correlation(kLoaderPickedUp, kLoaderDroppedOff, st::obstructed(), 3, st::obstructed()), false);
      push(correlation(kWorkpieceGripped, kLoaderDroppedOff, st::gripped(), 2, st::obstructed()), true);
      break;
    case TopologyName::Causality:
      push(constraint(kStackEjectorExtend, kStackEjectorRetracted, st::active(), 200, 300, st::unobstructed()),
           false);
      push(constraint(kStackEjectorExtend, kStackEjectorExtended, st::passive(), 200, 300, st::unobstructed()),
           true);
      push(constraint(kLoaderPickup, kLoaderPickedUp, st::active(), 700, 900, st::obstructed()), true);
      push(constraint(kLoaderDropoff, kLoaderDroppedOff, st::active(), 700, 900, st::obstructed()), true);
      push(constraint(kVacuumGrip, kWorkpieceGripped, st::active(), 100, 200, st::gripped()), true);
      push(constraint(kEjectAirPulse, kWorkpieceGripped, st::active(), 0, 100, st::released()), true);
      break;
    case TopologyName::Avoidance:
      push(constraint(kStackEjectorExtend, kLoaderPickup, st::active(), -500, 1000, st::passive()), false);
      push(constraint(kEjectAirPulse, kVacuumGrip, st::active(), 0, 500, st::passive()), true);
      push(constraint(kLoaderPickup, kLoaderDropoff, st::active(), -1500, 0, st::passive()), true);
      // The ejector must not start while the arm is leaving for the drop-off area.
      push(constraint(kLoaderDropoff, kStackEjectorExtend, st::active(), -300, 300, st::active(), true), true);
      break;
  }
  return t;
}

core::AnnotatedGraph build_process_sequence() { return build_topology(TopologyName::ProcessSequence).graph; }
core::AnnotatedGraph build_causality() { return build_topology(TopologyName::Causality).graph; }
core::AnnotatedGraph build_avoidance() { return build_topology(TopologyName::Avoidance).graph; }

StationCatalog build_catalog() {
  using namespace devices;
  using keys::kDeviceType, keys::kGpio, keys::kPartAssociation, keys::kSignalMapping,
      keys::kSpatialLocation, keys::kSpatialVariations;

  StationCatalog c;
  c.name = "Cap Dispenser";
  CatalogBuilder b(c);

  // Parts
  b.add(kStackEjector, DeviceKind::Part,
        {{kDeviceType, text("Horizontal Pusher")},
         {kSpatialVariations, value_of(core::VariationSet("Stack Ejector Position",
                                                          {"Stack Ejector Retracted Position",
                                                           "Stack Ejector Extended Position"}))},
         {kSpatialLocation, value_of(stack_ejector_box())}},
        {kSpatialLocation});
  b.add(kCapStackTube, DeviceKind::Part, {{kDeviceType, text("Tube")}}, {kDeviceType});
  b.add(kLoader, DeviceKind::Part,
        {{kDeviceType, text("Swing Arm")},
         {kSpatialVariations,
          value_of(core::VariationSet("Loader Position", {"Loader Pickup Position", "Loader Dropoff Position"}))}},
        {kDeviceType, kSpatialVariations});
  b.add(kVacuumGripper, DeviceKind::Part, {{kDeviceType, text("Vacuum Cup")}}, {kDeviceType});

  // Actuators
  b.add(kStackEjectorExtend, DeviceKind::Actuator,
        {{kDeviceType, text(kSolenoid)},
         {kGpio, integer(1)},
         {kSignalMapping, value_of(mp::high_solenoid())},
         {kPartAssociation, text(kStackEjector)}},
        {kGpio, kSignalMapping});
  b.add(kLoaderPickup, DeviceKind::Actuator,
        {{kDeviceType, text(kSolenoid)},
         {kGpio, integer(26)},
         {kSignalMapping, value_of(mp::high_solenoid())},
         {kPartAssociation, text(kLoader)}},
        {kGpio, kSignalMapping});
  b.add(kLoaderDropoff, DeviceKind::Actuator,
        {{kDeviceType, text(kSolenoid)},
         {kGpio, integer(12)},
         {kSignalMapping, value_of(mp::high_solenoid())},
         {kPartAssociation, text(kLoader)}},
        {kGpio, kSignalMapping});
  b.add(kVacuumGrip, DeviceKind::Actuator,
        {{kDeviceType, text(kSolenoid)},
         {kGpio, integer(5)},
         {kSignalMapping, value_of(mp::high_solenoid())},
         {kPartAssociation, text(kLoader)}});
  b.add(kEjectAirPulse, DeviceKind::Actuator,
        {{kDeviceType, text(kSolenoid)},
         {kGpio, integer(13)},
         {kSignalMapping, value_of(mp::high_solenoid())},
         {kPartAssociation, text(kVacuumGripper)}},
        {kGpio, kSignalMapping, kPartAssociation});

  // Sensors
  b.add(kStackEmpty, DeviceKind::Sensor,
        {{kDeviceType, text(kLightSensor)},
         {kGpio, integer(7)},
         {kSignalMapping, value_of(mp::low_light_sensor())},
         {kPartAssociation, text(kCapStackTube)}},
        {kGpio, kSignalMapping});
  b.add(kStackEjectorExtended, DeviceKind::Sensor,
        {{kDeviceType, text(kLightSensor)},
         {kGpio, integer(0)},
         {kSignalMapping, value_of(mp::high_light_sensor())},
         {kPartAssociation, text(kStackEjector)},
         {kSpatialLocation, value_of(extend_sensor_box())}});
  b.add(kStackEjectorRetracted, DeviceKind::Sensor,
        {{kDeviceType, text(kLightSensor)},
         {kGpio, integer(3)},
         {kSignalMapping, value_of(mp::high_light_sensor())},
         {kPartAssociation, text(kStackEjector)},
         {kSpatialLocation, value_of(retract_sensor_box())}});
  b.add(kLoaderPickedUp, DeviceKind::Sensor,
        {{kDeviceType, text(kContactSensor)},
         {kGpio, integer(25)},
         {kSignalMapping, value_of(mp::high_light_sensor())},
         {kPartAssociation, text(kLoader)}},
        {kGpio, kSignalMapping});
  b.add(kLoaderDroppedOff, DeviceKind::Sensor,
        {{kDeviceType, text(kContactSensor)},
         {kGpio, integer(16)},
         {kSignalMapping, value_of(mp::high_light_sensor())},
         {kPartAssociation, text(kLoader)}},
        {kGpio, kSignalMapping});
  b.add(kWorkpieceGripped, DeviceKind::Sensor,
        {{kDeviceType, text(kVacuumSensor)},
         {kGpio, integer(20)},
         {kSignalMapping, value_of(mp::high_grip_sensor())},
         {kPartAssociation, text(kVacuumGripper)}},
        {kDeviceType, kGpio, kSignalMapping});

  for (auto name : kAllTopologies) {
    c.topologies.emplace(name, build_topology(name));
  }
  c.sequence_unit = core::TimeUnit::Seconds;
  return c;
}

std::map<ComponentId, Box3D> sensor_boxes(const StationCatalog& catalog) {
  std::map<ComponentId, Box3D> out;
  for (const auto& [device, description] : catalog.descriptions) {
    if (auto box = catalog.location(device)) {
      out.emplace(device, *box);
    }
  }
  return out;
}

}  // namespace factory::station
