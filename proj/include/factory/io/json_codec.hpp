#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "factory/core/bemap.hpp"
#include "factory/core/graph.hpp"
#include "factory/core/scalar.hpp"
#include "factory/ia/metamodel.hpp"
#include "factory/monitor/monitor.hpp"
#include "factory/monitor/spatial.hpp"
#include "factory/station/catalog.hpp"

namespace factory::io {

// Insertion-ordered so every document has a fixed key order.
using json = nlohmann::ordered_json;

// Decoders throw SchemaViolation("<path>: ...") for missing keys or wrong value
// types and UnknownTypeTag for an unrecognised "type" value. `path` is the
// location of the value being decoded, "$" for the document root.

// Rule states: {"type":"Active"}, plus "signal" when the state is concrete.
json state_to_json(const core::DeviceState& state);
core::DeviceState state_from_json(const json& j, const std::string& path = "$");

json scalar_to_json(const core::SymbolicScalar& scalar);
core::SymbolicScalar scalar_from_json(const json& j, const std::string& path = "$");

json duration_to_json(const core::TimeDuration& d);
core::TimeDuration duration_from_json(const json& j, const std::string& path = "$");

json range_to_json(const core::TimeDurationRange& r);
core::TimeDurationRange range_from_json(const json& j, const std::string& path = "$");

// Throws UnsupportedAnnotation for a spatial relation.
json relationship_to_json(const core::Relationship& r);
core::Relationship relationship_from_json(const json& j, const std::string& path = "$");

// Keys in order: type, source, target, annotation. A plain edge has type "Edge".
json edge_to_json(const core::EdgeAnn& edge);
core::EdgeAnn edge_from_json(const json& j, const std::string& path = "$");

// `indent` < 0 gives a single line.
std::string serialize_edge(const core::EdgeAnn& edge, int indent = -1);
// Throws MalformedJson, UnknownTypeTag, SchemaViolation.
core::EdgeAnn deserialize_edge(std::string_view text);

json graph_to_json(const core::AnnotatedGraph& graph);
core::AnnotatedGraph graph_from_json(const json& j, const std::string& path = "$");

json value_to_json(const core::ComponentValue& value);
core::ComponentValue value_from_json(const json& j, const std::string& path = "$");

// Object from description key to value, in entry order.
json bemap_to_json(const core::BeMap& map);
core::BeMap bemap_from_json(const json& j, const std::string& path = "$");

// {"type":"SensorEvent","component":...,"timepoint":ms,"state":{"type":...,"signal":...}}
json event_to_json(const ia::PhysicalEvent& event);
ia::PhysicalEvent event_from_json(const json& j, const std::string& path = "$");

json verdict_to_json(const monitor::Verdict& v);
monitor::Verdict verdict_from_json(const json& j, const std::string& path = "$");
json verdicts_to_json(const std::vector<monitor::Verdict>& verdicts);
std::vector<monitor::Verdict> verdicts_from_json(const json& j, const std::string& path = "$");

json spatial_report_to_json(const monitor::SpatialReport& report);

json topology_to_json(const station::Topology& topology);
// Devices with their kinds and descriptions, then the requested topologies.
json catalog_to_json(const station::StationCatalog& catalog, const std::vector<station::TopologyName>& topologies);

// Throws MalformedJson with the parser's message.
json parse_json(std::string_view text);

}  // namespace factory::io
