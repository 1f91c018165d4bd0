#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "factory/core/bemap.hpp"
#include "factory/core/box.hpp"
#include "factory/core/graph.hpp"
#include "factory/core/time.hpp"
#include "factory/ia/metamodel.hpp"

namespace factory::station {

using core::ComponentId;
using ia::DeviceKind;

// Device names of the Cap Dispenser (station one).
namespace devices {
// actuators
inline constexpr std::string_view kStackEjectorExtend = "Stack Ejector Extend";
inline constexpr std::string_view kLoaderPickup = "Loader Pickup";
inline constexpr std::string_view kLoaderDropoff = "Loader Dropoff";
inline constexpr std::string_view kVacuumGrip = "Vacuum Grip";
inline constexpr std::string_view kEjectAirPulse = "Eject Air Pulse";
// sensors
inline constexpr std::string_view kStackEmpty = "Stack Empty";
inline constexpr std::string_view kStackEjectorExtended = "Stack Ejector Extended";
inline constexpr std::string_view kStackEjectorRetracted = "Stack Ejector Retracted";
inline constexpr std::string_view kLoaderPickedUp = "Loader Picked Up";
inline constexpr std::string_view kLoaderDroppedOff = "Loader Dropped Off";
inline constexpr std::string_view kWorkpieceGripped = "Workpiece Gripped";
// parts
inline constexpr std::string_view kStackEjector = "Stack Ejector";
inline constexpr std::string_view kCapStackTube = "Cap Stack Tube";
inline constexpr std::string_view kLoader = "Loader";
inline constexpr std::string_view kVacuumGripper = "Vacuum Gripper";
}  // namespace devices

// Description keys.
namespace keys {
inline constexpr std::string_view kDeviceCategory = "Device Category";
inline constexpr std::string_view kDeviceType = "Device Type";
inline constexpr std::string_view kGpio = "GPIO";
inline constexpr std::string_view kSignalMapping = "Signal Mapping";
inline constexpr std::string_view kPartAssociation = "Part Association";
inline constexpr std::string_view kSpatialLocation = "Spatial Location";
inline constexpr std::string_view kSpatialVariations = "Spatial Variations";
}  // namespace keys

ComponentId id(std::string_view name);

enum class TopologyName { ProcessSequence, Causality, Avoidance };

inline constexpr TopologyName kAllTopologies[] = {TopologyName::ProcessSequence, TopologyName::Causality,
                                                  TopologyName::Avoidance};

std::string_view to_string(TopologyName name);
// Accepts "process-sequence", "ProcessSequence", "process_sequence", ... (case-insensitive).
std::optional<TopologyName> parse_topology_name(std::string_view text);

struct Topology {
  TopologyName name;
  core::AnnotatedGraph graph;
  std::vector<bool> synthetic;  // parallel to graph.edges(); false = documented edge

  bool is_synthetic(std::size_t edge_index) const { return synthetic.at(edge_index); }
};

struct StationCatalog {
  std::string name;
  std::map<ComponentId, DeviceKind> devices;
  std::map<ComponentId, core::BeMap> descriptions;
  std::map<TopologyName, Topology> topologies;
  // (device, description key) pairs whose value was chosen, not documented.
  std::set<std::pair<ComponentId, std::string>> synthetic_entries;
  // Unit of process-sequence correlation constants.
  core::TimeUnit sequence_unit = core::TimeUnit::Seconds;

  std::optional<DeviceKind> kind_of(const ComponentId& device) const;
  std::vector<ComponentId> devices_of(DeviceKind kind) const;
  // Throws UnknownDevice.
  const core::BeMap& description(const ComponentId& device) const;
  std::optional<core::SignalMapping> signal_mapping(const ComponentId& device) const;
  std::optional<core::Box3D> location(const ComponentId& device) const;
  std::optional<ComponentId> part_association(const ComponentId& device) const;
  const Topology& topology(TopologyName name) const;
  bool is_synthetic(const ComponentId& device, std::string_view key) const;
};

// The complete Cap Dispenser model. Pure; every call returns an equal catalog.
StationCatalog build_catalog();

// Occupancy box of every device whose description has a Spatial Location.
std::map<ComponentId, core::Box3D> sensor_boxes(const StationCatalog& catalog);

Topology build_topology(TopologyName name);
core::AnnotatedGraph build_process_sequence();
core::AnnotatedGraph build_causality();
core::AnnotatedGraph build_avoidance();

}  // namespace factory::station
