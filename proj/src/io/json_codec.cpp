#include "factory/io/json_codec.hpp"

#include "factory/core/error.hpp"

namespace factory::io {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, path + ": " + what);
}

const json& member(const json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path, "missing key \"" + std::string(key) + "\"");
  return *it;
}

std::string child(const std::string& path, std::string_view key) {
  return path + "." + std::string(key);
}

std::string text_member(const json& j, std::string_view key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_string()) schema(child(path, key), "expected a string");
  return v.get<std::string>();
}

std::int64_t int_member(const json& j, std::string_view key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_number_integer()) schema(child(path, key), "expected an integer");
  return v.get<std::int64_t>();
}

std::string type_tag(const json& j, const std::string& path) {
  return text_member(j, "type", path);
}

[[noreturn]] void unknown_tag(const std::string& tag, const std::string& path) {
  throw Error(ErrorCode::UnknownTypeTag, tag + " at " + path);
}

core::Signal signal_from(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a signal string");
  auto s = core::parse_signal(j.get<std::string>());
  if (!s) schema(path, "unknown signal \"" + j.get<std::string>() + "\"");
  return *s;
}

int box_coord(const json& j, std::string_view key, const std::string& path) {
  std::int64_t v = int_member(j, key, path);
  if (v < INT32_MIN || v > INT32_MAX) schema(child(path, key), "coordinate out of range");
  return static_cast<int>(v);
}

const char* kSignalMapTag = "SignalMapping";
const char* kBoxTag = "Occupy3DBox";
const char* kVariationsTag = "SpatialVariations";
const char* kStateTag = "DeviceState";

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
}

// ---- states and scalars ----

json state_to_json(const core::DeviceState& state) {
  json j = {{"type", state.name}};
  if (!state.is_abstract()) j["signal"] = std::string(core::to_string(state.signal));
  return j;
}

core::DeviceState state_from_json(const json& j, const std::string& path) {
  core::DeviceState s{type_tag(j, path), core::Signal::DontCare};
  if (s.name.empty()) schema(child(path, "type"), "empty state name");
  if (auto it = j.find("signal"); it != j.end()) s.signal = signal_from(*it, child(path, "signal"));
  return s;
}

json scalar_to_json(const core::SymbolicScalar& scalar) {
  using K = core::SymbolicScalar::Kind;
  switch (scalar.kind()) {
    case K::Constant: return {{"type", "SS Constant"}, {"expression", scalar.constant_value()}};
    case K::Variable: return {{"type", "SS Variable"}, {"expression", {{"type", scalar.variable_name()}}}};
    case K::Addition: {
      json ops = json::array();
      for (const auto& op : scalar.operands()) ops.push_back(scalar_to_json(op));
      return {{"type", "SS Addition"}, {"expression", ops}};
    }
  }
  return {};
}

core::SymbolicScalar scalar_from_json(const json& j, const std::string& path) {
  std::string tag = type_tag(j, path);
  std::string epath = child(path, "expression");
  if (tag == "SS Constant") return core::SymbolicScalar::constant(int_member(j, "expression", path));
  if (tag == "SS Variable") return core::SymbolicScalar::variable(state_from_json(member(j, "expression", path), epath).name);
  if (tag == "SS Addition") {
    const json& ops = member(j, "expression", path);
    if (!ops.is_array()) schema(epath, "expected an array");
    if (ops.size() < 2) schema(epath, "an addition needs at least two operands");
    std::vector<core::SymbolicScalar> operands;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      operands.push_back(scalar_from_json(ops[i], epath + "[" + std::to_string(i) + "]"));
    }
    return core::SymbolicScalar::addition(std::move(operands));
  }
  unknown_tag(tag, path);
}

json duration_to_json(const core::TimeDuration& d) {
  return {{"type", "TimeDuration"}, {"start", scalar_to_json(d.start)}, {"scalar", scalar_to_json(d.scalar)}};
}

core::TimeDuration duration_from_json(const json& j, const std::string& path) {
  std::string tag = type_tag(j, path);
  if (tag != "TimeDuration") unknown_tag(tag, path);
  return {scalar_from_json(member(j, "start", path), child(path, "start")),
          scalar_from_json(member(j, "scalar", path), child(path, "scalar"))};
}

json range_to_json(const core::TimeDurationRange& r) {
  return {{"type", "TimeDurationRange"},
          {"minimum", duration_to_json(r.minimum)},
          {"maximum", duration_to_json(r.maximum)}};
}

core::TimeDurationRange range_from_json(const json& j, const std::string& path) {
  std::string tag = type_tag(j, path);
  if (tag != "TimeDurationRange") unknown_tag(tag, path);
  return {duration_from_json(member(j, "minimum", path), child(path, "minimum")),
          duration_from_json(member(j, "maximum", path), child(path, "maximum"))};
}

// ---- relationships and edges ----

json relationship_to_json(const core::Relationship& r) {
  if (const auto* c = std::get_if<core::TemporalCorrelation>(&r)) {
    return {{"type", "FestoStateCorrelation"},
            {"cause", state_to_json(c->cause)},
            {"duration", duration_to_json(c->duration)},
            {"effect", state_to_json(c->effect)}};
  }
  if (const auto* c = std::get_if<core::TemporalConstraint>(&r)) {
    json j = {{"type", "FestoStateConstraint"},
              {"cause", state_to_json(c->cause)},
              {"durationRange", range_to_json(c->range)},
              {"effect", state_to_json(c->effect)}};
    if (c->inverse) j["inverse"] = true;
    return j;
  }
  if (const auto* d = std::get_if<core::TimeDuration>(&r)) return duration_to_json(*d);
  throw Error(ErrorCode::UnsupportedAnnotation, "spatial relations have no wire form");
}

core::Relationship relationship_from_json(const json& j, const std::string& path) {
  std::string tag = type_tag(j, path);
  if (tag == "FestoStateCorrelation") {
    return core::TemporalCorrelation{state_from_json(member(j, "cause", path), child(path, "cause")),
                                     duration_from_json(member(j, "duration", path), child(path, "duration")),
                                     state_from_json(member(j, "effect", path), child(path, "effect"))};
  }
  if (tag == "FestoStateConstraint") {
    bool inverse = false;
    if (auto it = j.find("inverse"); it != j.end()) {
      if (!it->is_boolean()) schema(child(path, "inverse"), "expected a boolean");
      inverse = it->get<bool>();
    }
    return core::TemporalConstraint{
        state_from_json(member(j, "cause", path), child(path, "cause")),
        range_from_json(member(j, "durationRange", path), child(path, "durationRange")),
        state_from_json(member(j, "effect", path), child(path, "effect")), inverse};
  }
  if (tag == "TimeDuration") return duration_from_json(j, path);
  unknown_tag(tag, path);
}

namespace {

json component_to_json(const core::ComponentId& id) {
  return {{"type", "Component"}, {"id", id.str()}};
}

core::ComponentId component_from_json(const json& j, const std::string& path) {
  std::string tag = type_tag(j, path);
  if (tag != "Component") unknown_tag(tag, path);
  std::string id = text_member(j, "id", path);
  if (id.empty()) schema(child(path, "id"), "empty component id");
  return core::ComponentId(id);
}

}  // namespace

json edge_to_json(const core::EdgeAnn& edge) {
  json j = {{"type", edge.annotation ? "EdgeAnnotated" : "Edge"},
            {"source", component_to_json(edge.source)},
            {"target", component_to_json(edge.target)}};
  if (edge.annotation) j["annotation"] = relationship_to_json(*edge.annotation);
  return j;
}

core::EdgeAnn edge_from_json(const json& j, const std::string& path) {
  std::string tag = type_tag(j, path);
  if (tag != "EdgeAnnotated" && tag != "Edge") unknown_tag(tag, path);
  core::EdgeAnn edge{component_from_json(member(j, "source", path), child(path, "source")),
                     component_from_json(member(j, "target", path), child(path, "target")), std::nullopt};
  if (tag == "EdgeAnnotated") {
    edge.annotation = relationship_from_json(member(j, "annotation", path), child(path, "annotation"));
  } else if (j.contains("annotation")) {
    schema(child(path, "annotation"), "a plain edge carries no annotation");
  }
  return edge;
}

std::string serialize_edge(const core::EdgeAnn& edge, int indent) {
  return edge_to_json(edge).dump(indent);
}

core::EdgeAnn deserialize_edge(std::string_view text) {
  return edge_from_json(parse_json(text));
}

json graph_to_json(const core::AnnotatedGraph& graph) {
  json edges = json::array();
  for (const auto& e : graph.edges()) edges.push_back(edge_to_json(e));
  return edges;
}

core::AnnotatedGraph graph_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of edges");
  core::AnnotatedGraph g;
  for (std::size_t i = 0; i < j.size(); ++i) g.add(edge_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return g;
}

// ---- description values ----

json value_to_json(const core::ComponentValue& value) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return v;
        } else if constexpr (std::is_same_v<T, core::Box3D>) {
          return {{"type", kBoxTag}, {"x1", v.x1()}, {"y1", v.y1()}, {"z1", v.z1()},
                  {"x2", v.x2()},    {"y2", v.y2()}, {"z2", v.z2()}};
        } else if constexpr (std::is_same_v<T, core::VariationSet>) {
          return {{"type", kVariationsTag}, {"name", v.name()}, {"positions", v.positions()}};
        } else if constexpr (std::is_same_v<T, core::SignalMapping>) {
          return {{"type", kSignalMapTag}, {"High", state_to_json(v.on_high())}, {"Low", state_to_json(v.on_low())}};
        } else {
          return {{"type", kStateTag}, {"state", state_to_json(v)}};
        }
      },
      value.payload());
}

core::ComponentValue value_from_json(const json& j, const std::string& path) {
  using P = core::ComponentValue::Payload;
  if (j.is_string()) return core::ComponentValue(P(j.get<std::string>()));
  if (j.is_number_integer()) return core::ComponentValue(P(j.get<std::int64_t>()));
  if (!j.is_object()) schema(path, "expected a string, integer or tagged object");
  std::string tag = type_tag(j, path);
  if (tag == kBoxTag) {
    return core::ComponentValue(P(core::Box3D(box_coord(j, "x1", path), box_coord(j, "y1", path),
                                              box_coord(j, "z1", path), box_coord(j, "x2", path),
                                              box_coord(j, "y2", path), box_coord(j, "z2", path))));
  }
  if (tag == kVariationsTag) {
    const json& pos = member(j, "positions", path);
    if (!pos.is_array()) schema(child(path, "positions"), "expected an array");
    std::vector<std::string> positions;
    for (const auto& p : pos) {
      if (!p.is_string()) schema(child(path, "positions"), "expected strings");
      positions.push_back(p.get<std::string>());
    }
    return core::ComponentValue(P(core::VariationSet(text_member(j, "name", path), std::move(positions))));
  }
  if (tag == kSignalMapTag) {
    return core::ComponentValue(P(core::SignalMapping(state_from_json(member(j, "High", path), child(path, "High")),
                                                      state_from_json(member(j, "Low", path), child(path, "Low")))));
  }
  if (tag == kStateTag) return core::ComponentValue(P(state_from_json(member(j, "state", path), child(path, "state"))));
  unknown_tag(tag, path);
}

json bemap_to_json(const core::BeMap& map) {
  json j = json::object();
  for (const auto& [key, value] : map.entries()) j[key.str()] = value_to_json(value);
  return j;
}

core::BeMap bemap_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  std::vector<core::BeMap::Entry> entries;
  for (const auto& [key, value] : j.items()) {
    if (key.empty()) schema(path, "empty key");
    entries.emplace_back(core::ComponentId(key), value_from_json(value, child(path, key)));
  }
  return core::BeMap::build(std::move(entries));
}

// ---- events ----

namespace {

std::string event_tag(ia::DeviceKind kind) {
  switch (kind) {
    case ia::DeviceKind::Sensor: return "SensorEvent";
    case ia::DeviceKind::Actuator: return "ActuatorEvent";
    case ia::DeviceKind::Part: return "PartEvent";
  }
  return "?";
}

json event_state_to_json(const core::StateChangeEvent& e) {
  return {{"component", e.owner.str()}, {"timepoint", e.timepoint.ms}, {"state", state_to_json(e.state)}};
}

core::StateChangeEvent event_state_from_json(const json& j, const std::string& path) {
  std::string owner = text_member(j, "component", path);
  if (owner.empty()) schema(child(path, "component"), "empty component");
  return {core::ComponentId(owner), core::TimePoint{int_member(j, "timepoint", path)},
          state_from_json(member(j, "state", path), child(path, "state"))};
}

}  // namespace

json event_to_json(const ia::PhysicalEvent& event) {
  json j = {{"type", event_tag(event.kind())}};
  j.update(event_state_to_json(event.as_state_change()));
  return j;
}

ia::PhysicalEvent event_from_json(const json& j, const std::string& path) {
  std::string tag = type_tag(j, path);
  ia::DeviceKind kind;
  if (tag == "SensorEvent") {
    kind = ia::DeviceKind::Sensor;
  } else if (tag == "ActuatorEvent") {
    kind = ia::DeviceKind::Actuator;
  } else if (tag == "PartEvent") {
    kind = ia::DeviceKind::Part;
  } else {
    unknown_tag(tag, path);
  }
  core::StateChangeEvent e = event_state_from_json(j, path);
  if (e.state.is_abstract()) schema(child(path, "state.signal"), "an event needs a High or Low signal");
  return ia::make_event(e.owner, kind, e.timepoint, e.state);
}

// ---- verdicts ----

json verdict_to_json(const monitor::Verdict& v) {
  json j = {{"topology", v.topology},
            {"edge", v.edge_index},
            {"source", v.source.str()},
            {"target", v.target.str()},
            {"outcome", std::string(monitor::to_string(v.outcome))},
            {"cause", event_state_to_json(v.cause_event)},
            {"cause_index", v.cause_index}};
  j["witness"] = v.witness ? event_state_to_json(*v.witness) : json(nullptr);
  j["decided_at"] = v.decided_at.ms;
  return j;
}

monitor::Verdict verdict_from_json(const json& j, const std::string& path) {
  std::string outcome_text = text_member(j, "outcome", path);
  auto outcome = monitor::parse_outcome(outcome_text);
  if (!outcome) schema(child(path, "outcome"), "unknown outcome \"" + outcome_text + "\"");
  std::int64_t edge = int_member(j, "edge", path);
  std::int64_t cause_index = int_member(j, "cause_index", path);
  if (edge < 0 || cause_index < 0) schema(path, "negative index");
  monitor::Verdict v{text_member(j, "topology", path),
                     static_cast<std::size_t>(edge),
                     core::ComponentId(text_member(j, "source", path)),
                     core::ComponentId(text_member(j, "target", path)),
                     event_state_from_json(member(j, "cause", path), child(path, "cause")),
                     static_cast<std::size_t>(cause_index),
                     *outcome,
                     std::nullopt,
                     core::TimePoint{int_member(j, "decided_at", path)}};
  const json& w = member(j, "witness", path);
  if (!w.is_null()) v.witness = event_state_from_json(w, child(path, "witness"));
  return v;
}

json verdicts_to_json(const std::vector<monitor::Verdict>& verdicts) {
  json arr = json::array();
  for (const auto& v : verdicts) arr.push_back(verdict_to_json(v));
  return arr;
}

std::vector<monitor::Verdict> verdicts_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  std::vector<monitor::Verdict> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(verdict_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json spatial_report_to_json(const monitor::SpatialReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"device_a", e.device_a.str()},
                       {"device_b", e.device_b.str()},
                       {"overlap", e.overlap},
                       {"shared_volume", e.shared_volume},
                       {"mounted", e.mounted}});
  }
  return {{"pairs", entries}, {"overlaps", report.overlaps()}, {"violations", report.violations()}};
}

// ---- catalog ----

json topology_to_json(const station::Topology& topology) {
  json synthetic = json::array();
  for (bool s : topology.synthetic) synthetic.push_back(s);
  return {{"name", std::string(station::to_string(topology.name))},
          {"edges", graph_to_json(topology.graph)},
          {"synthetic", synthetic}};
}

json catalog_to_json(const station::StationCatalog& catalog, const std::vector<station::TopologyName>& topologies) {
  json devices = json::array();
  for (const auto& [id, kind] : catalog.devices) {
    json synthetic = json::array();
    for (const auto& [dev, key] : catalog.synthetic_entries) {
      if (dev == id) synthetic.push_back(key);
    }
    devices.push_back({{"id", id.str()},
                       {"kind", std::string(ia::to_string(kind))},
                       {"description", bemap_to_json(catalog.description(id))},
                       {"synthetic_keys", synthetic}});
  }
  json tops = json::array();
  for (auto name : topologies) tops.push_back(topology_to_json(catalog.topology(name)));
  return {{"station", catalog.name},
          {"sequence_unit", catalog.sequence_unit == core::TimeUnit::Seconds ? "seconds" : "milliseconds"},
          {"devices", devices},
          {"topologies", tops}};
}

}  // namespace factory::io
