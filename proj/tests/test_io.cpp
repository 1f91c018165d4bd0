#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "factory/core/error.hpp"
#include "factory/io/dot.hpp"
#include "factory/io/json_codec.hpp"
#include "factory/io/trace_io.hpp"
#include "factory/sim/simulator.hpp"

using namespace factory;
using namespace factory::io;
using core::Signal;
using core::TimePoint;
namespace dev = station::devices;
namespace st = ia::states;

namespace {

const station::StationCatalog& cat() {
  static const station::StationCatalog c = station::build_catalog();
  return c;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::string golden(const char* file) { return read_file(std::string(FACTORY_GOLDEN_DIR) + "/" + file); }

// Key order does not matter for structural equality.
nlohmann::json structural(std::string_view text) { return nlohmann::json::parse(text); }

}  // namespace

TEST_CASE("golden edges decode to the catalog edges") {
  const std::pair<station::TopologyName, const char*> cases[] = {
      {station::TopologyName::ProcessSequence, "process_sequence_edge.json"},
      {station::TopologyName::Causality, "causality_edge.json"},
      {station::TopologyName::Avoidance, "avoidance_edge.json"},
  };
  for (const auto& [name, file] : cases) {
    CAPTURE(file);
    auto text = golden(file);
    auto edge = deserialize_edge(text);
    const auto& edges = cat().topology(name).graph.edges();
    REQUIRE(std::find(edges.begin(), edges.end(), edge) != edges.end());
    CHECK(structural(serialize_edge(edge)) == structural(text));
    CHECK(structural(serialize_edge(edge, 4)) == structural(text));
  }
}

TEST_CASE("causality golden fields") {
  auto edge = deserialize_edge(golden("causality_edge.json"));
  CHECK(edge.source.str() == dev::kStackEjectorExtend);
  CHECK(edge.target.str() == dev::kStackEjectorRetracted);
  auto* c = std::get_if<core::TemporalConstraint>(&*edge.annotation);
  REQUIRE(c != nullptr);
  CHECK(c->cause == st::active());
  CHECK(c->effect == st::unobstructed());
  CHECK_FALSE(c->inverse);
  CHECK(c->range.bounds({{"Active", 0}}) == std::pair<std::int64_t, std::int64_t>{200, 300});
}

TEST_CASE("every catalog edge round-trips") {
  for (auto name : station::kAllTopologies) {
    for (const auto& edge : cat().topology(name).graph.edges()) {
      CHECK(deserialize_edge(serialize_edge(edge)) == edge);
    }
    const auto& g = cat().topology(name).graph;
    CHECK(graph_from_json(graph_to_json(g)) == g);
  }
}

TEST_CASE("inverse flag only appears when set") {
  auto rel = core::TemporalConstraint{st::active(), core::TimeDurationRange::relative_to("Active", -300, 300), st::active(), false};
  CHECK_FALSE(relationship_to_json(rel).contains("inverse"));
  rel.inverse = true;
  auto j = relationship_to_json(rel);
  CHECK(j.at("inverse") == true);
  CHECK(relationship_from_json(j) == core::Relationship(rel));
}

TEST_CASE("plain edges and bare durations") {
  core::EdgeAnn plain{core::ComponentId("A"), core::ComponentId("B"), std::nullopt};
  CHECK(edge_to_json(plain).at("type") == "Edge");
  CHECK(deserialize_edge(serialize_edge(plain)) == plain);
  core::EdgeAnn delay{core::ComponentId("A"), core::ComponentId("B"), core::Relationship(core::TimeDuration::relative_to("On", 7))};
  CHECK(deserialize_edge(serialize_edge(delay)) == delay);
  core::EdgeAnn spatial{core::ComponentId("A"), core::ComponentId("B"), core::Relationship(core::SpatialRelation{})};
  CHECK(code_of([&] { serialize_edge(spatial); }) == ErrorCode::UnsupportedAnnotation);
}

TEST_CASE("description values round-trip") {
  for (const auto& [device, map] : cat().descriptions) {
    CAPTURE(device.str());
    CHECK(bemap_from_json(bemap_to_json(map)) == map);
  }
  auto j = value_to_json(core::ComponentValue(core::Box3D(53, 198, 4, 85, 208, 20)));
  CHECK(j.at("type") == "Occupy3DBox");
  CHECK(j.at("x2") == 85);
}

TEST_CASE("events round-trip") {
  auto e = ia::make_event(station::id(dev::kStackEmpty), ia::DeviceKind::Sensor, TimePoint{1234}, st::obstructed(Signal::High));
  auto j = event_to_json(e);
  CHECK(j.at("type") == "SensorEvent");
  CHECK(j.at("timepoint") == 1234);
  CHECK(event_from_json(j) == e);
  CHECK(event_from_json(parse_json(event_to_line(e))) == e);

  j["state"].erase("signal");
  CHECK(code_of([&] { event_from_json(j); }) == ErrorCode::SchemaViolation);
}

TEST_CASE("verdicts round-trip") {
  auto trace = sim::sim_run(cat(), sim::nominal_cycle_script(1), {});
  std::vector<core::StateChangeEvent> events;
  for (const auto& e : trace) events.push_back(e.as_state_change());
  auto rules = monitor::compile_catalog_rules(cat(), {}, {});
  auto verdicts = monitor::check_trace(rules, events, {});
  REQUIRE_FALSE(verdicts.empty());
  CHECK(verdicts_from_json(verdicts_to_json(verdicts)) == verdicts);
}

TEST_CASE("decode errors") {
  CHECK(code_of([] { deserialize_edge(R"({"type":"Mystery"})"); }) == ErrorCode::UnknownTypeTag);
  CHECK(code_of([] { deserialize_edge(R"({"type":"EdgeAnnotated","source":)"); }) == ErrorCode::MalformedJson);
  CHECK(code_of([] { deserialize_edge(R"({"type":"EdgeAnnotated","source":{"type":"Component","id":"A"}})"); }) ==
        ErrorCode::SchemaViolation);
  CHECK(code_of([] { deserialize_edge(R"({"type":"Edge","source":{"type":"Component","id":5},"target":{"type":"Component","id":"B"}})"); }) ==
        ErrorCode::SchemaViolation);

  auto text = golden("causality_edge.json");
  auto j = parse_json(text);
  j["annotation"]["durationRange"]["minimum"]["scalar"]["type"] = "SS Division";
  try {
    edge_from_json(j);
    FAIL("expected UnknownTypeTag");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownTypeTag);
    CHECK(std::string(e.what()).find("SS Division") != std::string::npos);
  }
}

TEST_CASE("trace files") {
  auto trace = sim::sim_run(cat(), sim::nominal_cycle_script(1), {});
  std::stringstream buf;
  write_trace(buf, trace);
  CHECK(read_trace(buf) == trace);

  std::istringstream empty("");
  CHECK(read_trace(empty).empty());

  std::istringstream blanks("\n\n");
  CHECK(read_trace(blanks).empty());

  std::stringstream shuffled;
  shuffled << event_to_line(trace.back()) << "\n" << event_to_line(trace.front()) << "\n";
  try {
    read_trace(shuffled);
    FAIL("expected OutOfOrderEvent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfOrderEvent);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream broken("{\"type\":\"SensorEvent\"\n");
  CHECK(code_of([&] { read_trace(broken); }) == ErrorCode::MalformedJson);

  CHECK(code_of([] { read_file("/nonexistent/trace.jsonl"); }) == ErrorCode::Io);
}

TEST_CASE("scenario and fault files") {
  auto script = sim::nominal_cycle_script(2);
  std::stringstream buf;
  write_scenario(buf, script);
  CHECK(read_scenario(buf) == script);

  auto shipped = read_file(std::string(FACTORY_SCENARIO_DIR) + "/nominal_cycle.jsonl");
  std::istringstream in(shipped);
  CHECK(read_scenario(in) == script);

  std::vector<sim::FaultSpec> faults{
      sim::LatencyOverride{station::id(dev::kStackEjectorExtend), std::string(st::kActive), 350},
      sim::LatencyOverride{station::id(dev::kLoaderPickup), std::nullopt, 10},
      sim::StuckSensor{station::id(dev::kStackEmpty), st::obstructed(Signal::High)},
      sim::DropEvents{station::id(dev::kWorkpieceGripped)},
  };
  std::stringstream fb;
  write_faults(fb, faults);
  CHECK(read_faults(fb) == faults);

  std::istringstream unknown(R"({"type":"Meteor","device":"X"})");
  CHECK(code_of([&] { read_faults(unknown); }) == ErrorCode::UnknownTypeTag);
}

TEST_CASE("catalog dump") {
  auto j = catalog_to_json(cat(), {station::TopologyName::Causality});
  CHECK(j.at("topologies").size() == 1);
  auto edge0 = j.at("topologies").at(0).at("edges").at(0);
  CHECK(structural(edge0.dump()) == structural(golden("causality_edge.json")));
  CHECK(j.at("devices").size() == cat().devices.size());
}

TEST_CASE("dot export") {
  const auto& g = cat().topology(station::TopologyName::Causality).graph;
  CHECK(edge_label(g.edges().at(0)) == "Active →[200,300]→ Unobstructed");

  auto gray = export_dot(g);
  CHECK(gray.rfind("digraph", 0) == 0);
  CHECK(gray.find("red") == std::string::npos);
  CHECK(gray.find("green") == std::string::npos);
  CHECK(gray.find("gray") != std::string::npos);

  std::map<core::ComponentId, core::DeviceState> last{
      {station::id(dev::kStackEmpty), st::obstructed(Signal::Low)},
      {station::id(dev::kStackEjectorRetracted), st::unobstructed(Signal::Low)}};
  core::AnnotatedGraph tiny({{station::id(dev::kStackEmpty), station::id(dev::kStackEjectorExtend), std::nullopt}});
  auto coloured = export_dot(tiny, last);
  auto pos_empty = coloured.find("\"" + std::string(dev::kStackEmpty) + "\" [");
  REQUIRE(pos_empty != std::string::npos);
  auto empty_line = coloured.substr(pos_empty, coloured.find('\n', pos_empty) - pos_empty);
  CHECK(empty_line.find("fillcolor=red") != std::string::npos);
  CHECK(coloured.find("fillcolor=gray") != std::string::npos);
  auto with_retracted = export_dot(g, last);
  auto pos = with_retracted.find("\"" + std::string(dev::kStackEjectorRetracted) + "\" [");
  REQUIRE(pos != std::string::npos);
  CHECK(with_retracted.substr(pos, with_retracted.find('\n', pos) - pos).find("green") != std::string::npos);

  CHECK(export_dot(g, last) == export_dot(g, last));

  auto ps = cat().topology(station::TopologyName::ProcessSequence).graph;
  CHECK(edge_label(ps.edges().at(0)) == "Obstructed →[3,3]→ Obstructed");
}
