#include "doctest.h"

#include "factory/core/error.hpp"
#include "factory/monitor/monitor.hpp"
#include "factory/monitor/spatial.hpp"

using namespace factory;
using namespace factory::monitor;
using core::ComponentId;
using core::Signal;
using core::StateChangeEvent;
using core::TimePoint;
namespace dev = station::devices;
namespace st = ia::states;

namespace {

const station::StationCatalog& cat() {
  static const station::StationCatalog c = station::build_catalog();
  return c;
}

StateChangeEvent ev(std::string_view device, std::int64_t t, core::DeviceState s) {
  return {station::id(device), TimePoint{t}, std::move(s)};
}

CompiledRule rule(std::string_view source, std::string_view target, core::DeviceState cause, std::int64_t lo,
                  std::int64_t hi, core::DeviceState effect, bool inverse = false) {
  return {"t", 0, station::id(source), station::id(target), std::move(cause), std::move(effect), lo, hi, inverse, false};
}

CompiledRule causality_rule() {
  return rule(dev::kStackEjectorExtend, dev::kStackEjectorRetracted, st::active(), 200, 300, st::unobstructed());
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

const StateChangeEvent kCause = ev(dev::kStackEjectorExtend, 1000, st::active(Signal::High));

}  // namespace

TEST_CASE("effect inside the window satisfies") {
  auto effect = ev(dev::kStackEjectorRetracted, 1250, st::unobstructed(Signal::Low));
  auto v = check_trace({causality_rule()}, {kCause, effect}, {});
  REQUIRE(v.size() == 1);
  CHECK(v[0].outcome == Outcome::Satisfied);
  CHECK(v[0].witness == effect);
  CHECK(v[0].cause_event == kCause);
  CHECK(v[0].decided_at.ms == 1250);
}

TEST_CASE("window bounds are inclusive") {
  for (std::int64_t t : {1200, 1300}) {
    auto v = check_trace({causality_rule()}, {kCause, ev(dev::kStackEjectorRetracted, t, st::unobstructed(Signal::Low))}, {});
    CHECK(v.at(0).outcome == Outcome::Satisfied);
  }
}

TEST_CASE("late and missing effects") {
  auto late = ev(dev::kStackEjectorRetracted, 1350, st::unobstructed(Signal::Low));
  auto v = check_trace({causality_rule()}, {kCause, late}, {});
  REQUIRE(v.size() == 1);
  CHECK(v[0].outcome == Outcome::ViolatedLate);
  CHECK(v[0].witness == late);
  CHECK(v[0].decided_at.ms == 1350);

  // An unrelated event past the window closes it first.
  auto other = ev(dev::kVacuumGrip, 1320, st::active(Signal::High));
  v = check_trace({causality_rule()}, {kCause, other, late}, {});
  CHECK(v.at(0).outcome == Outcome::ViolatedMissing);
  CHECK(v.at(0).decided_at.ms == 1320);
  CHECK_FALSE(v.at(0).witness.has_value());

  Monitor m({causality_rule()}, {});
  CHECK(m.ingest(kCause).empty());
  auto fin = m.finalize(TimePoint{2000});
  REQUIRE(fin.size() == 1);
  CHECK(fin[0].outcome == Outcome::ViolatedMissing);
  CHECK(fin[0].decided_at.ms == 2000);
}

TEST_CASE("early effects") {
  auto early = ev(dev::kStackEjectorRetracted, 1100, st::unobstructed(Signal::Low));
  auto v = check_trace({causality_rule()}, {kCause, early, ev(dev::kVacuumGrip, 1400, st::active(Signal::High))}, {});
  CHECK(v.at(0).outcome == Outcome::ViolatedEarly);
  CHECK(v.at(0).witness == early);

  // A later in-window effect still satisfies the obligation.
  auto in_window = ev(dev::kStackEjectorRetracted, 1250, st::unobstructed(Signal::Low));
  v = check_trace({causality_rule()}, {kCause, early, in_window}, {});
  CHECK(v.at(0).outcome == Outcome::Satisfied);
  CHECK(v.at(0).witness == in_window);
}

TEST_CASE("effect specification must match") {
  auto wrong_state = ev(dev::kStackEjectorRetracted, 1250, st::obstructed(Signal::High));
  auto wrong_device = ev(dev::kStackEjectorExtended, 1250, st::unobstructed(Signal::Low));
  Monitor m({causality_rule()}, {});
  m.ingest(kCause);
  m.ingest(wrong_state);
  m.ingest(wrong_device);
  CHECK(m.finalize(TimePoint{1300}).at(0).outcome == Outcome::ViolatedMissing);

  auto concrete = rule(dev::kStackEjectorExtend, dev::kStackEjectorRetracted, st::active(), 200, 300,
                       st::unobstructed(Signal::High));
  auto v = check_trace({concrete},
                       {kCause, ev(dev::kStackEjectorRetracted, 1250, st::unobstructed(Signal::Low)),
                        ev(dev::kVacuumGrip, 1400, st::active(Signal::High))},
                       {});
  CHECK(v.at(0).outcome == Outcome::ViolatedMissing);
}

TEST_CASE("lookback for negative window minimum") {
  auto avoid = rule(dev::kStackEjectorExtend, dev::kLoaderPickup, st::active(), -500, 1000, st::passive());
  auto before = ev(dev::kLoaderPickup, 1700, st::passive(Signal::Low));
  auto cause = ev(dev::kStackEjectorExtend, 2000, st::active(Signal::High));
  auto v = check_trace({avoid}, {before, cause}, {});
  REQUIRE(v.size() == 1);
  CHECK(v[0].outcome == Outcome::Satisfied);
  CHECK(v[0].witness == before);
  CHECK(v[0].decided_at.ms == 2000);

  // Outside the lookback window.
  auto too_old = ev(dev::kLoaderPickup, 1499, st::passive(Signal::Low));
  Monitor m({avoid}, {});
  m.ingest(too_old);
  auto opened = m.ingest(cause);
  CHECK(opened.empty());
  CHECK(m.open_obligations() == 1);
  CHECK(m.history_horizon_ms() == 500);
}

TEST_CASE("windows entirely in the past close at once") {
  auto past = rule(dev::kStackEjectorExtend, dev::kLoaderPickup, st::active(), -300, -100, st::passive());
  auto v = check_trace({past}, {ev(dev::kStackEjectorExtend, 1000, st::active(Signal::High))}, {});
  REQUIRE(v.size() == 1);
  CHECK(v[0].outcome == Outcome::ViolatedMissing);
  CHECK(v[0].decided_at.ms == 1000);
}

TEST_CASE("inverse rules") {
  auto forbid = rule(dev::kLoaderDropoff, dev::kStackEjectorExtend, st::active(), -300, 300, st::active(), true);
  auto cause = ev(dev::kLoaderDropoff, 1000, st::active(Signal::High));
  auto inside = ev(dev::kStackEjectorExtend, 1200, st::active(Signal::High));
  auto v = check_trace({forbid}, {cause, inside}, {});
  CHECK(v.at(0).outcome == Outcome::ViolatedForbidden);
  CHECK(v.at(0).witness == inside);

  Monitor m({forbid}, {});
  m.ingest(cause);
  auto fin = m.finalize(TimePoint{1300});
  CHECK(fin.at(0).outcome == Outcome::Satisfied);
  CHECK_FALSE(fin.at(0).witness.has_value());

  Monitor open({forbid}, {});
  open.ingest(cause);
  CHECK(open.finalize(TimePoint{1299}).at(0).outcome == Outcome::Pending);
}

TEST_CASE("finalize reports open windows as pending") {
  Monitor m({causality_rule()}, {});
  m.ingest(kCause);
  auto fin = m.finalize(TimePoint{1250});
  REQUIRE(fin.size() == 1);
  CHECK(fin[0].outcome == Outcome::Pending);
  CHECK_FALSE(is_violation(fin[0].outcome));
  CHECK(fin[0].decided_at.ms == 1250);
}

TEST_CASE("process sequence correlation in seconds") {
  MonitorConfig cfg;
  auto rules = compile_rules(cat().topology(station::TopologyName::ProcessSequence).graph, "process-sequence", cfg);
  REQUIRE(rules.size() >= 1);
  CHECK(rules[0].correlation);
  CHECK(rules[0].min_ms == 3000);
  CHECK(rules[0].max_ms == 3000);

  std::vector<StateChangeEvent> trace{ev(dev::kLoaderPickedUp, 1000, st::obstructed(Signal::High)),
                                      ev(dev::kLoaderDroppedOff, 4000, st::obstructed(Signal::High))};
  auto v = check_trace({rules[0]}, trace, cfg);
  CHECK(v.at(0).outcome == Outcome::Satisfied);

  trace[1] = ev(dev::kLoaderDroppedOff, 4001, st::obstructed(Signal::High));
  CHECK(check_trace({rules[0]}, trace, cfg).at(0).outcome == Outcome::ViolatedLate);

  cfg.correlation_tolerance_ms = 1;
  auto tolerant = compile_rules(cat().topology(station::TopologyName::ProcessSequence).graph, "ps", cfg);
  CHECK(check_trace({tolerant[0]}, trace, cfg).at(0).outcome == Outcome::Satisfied);

  MonitorConfig ms;
  ms.sequence_unit = core::TimeUnit::Milliseconds;
  CHECK(compile_rules(cat().topology(station::TopologyName::ProcessSequence).graph, "ps", ms)[0].max_ms == 3);
}

TEST_CASE("empty trace gives no verdicts") {
  for (auto name : station::kAllTopologies) {
    CHECK(check_trace(cat(), cat().topology(name).graph, {}, {}).empty());
  }
}

TEST_CASE("stream errors") {
  Monitor m({causality_rule()}, {});
  m.ingest(kCause);
  CHECK(code_of([&] { m.ingest(ev(dev::kStackEmpty, 999, st::obstructed(Signal::Low))); }) ==
        ErrorCode::OutOfOrderEvent);
  CHECK(code_of([&] { m.finalize(TimePoint{10}); }) == ErrorCode::OutOfOrderEvent);

  std::set<ComponentId> known{station::id(dev::kStackEmpty)};
  Monitor strict({}, {}, known);
  CHECK(code_of([&] { strict.ingest(ev("Ghost", 0, st::obstructed(Signal::Low))); }) == ErrorCode::UnknownDevice);
  CHECK_NOTHROW(strict.ingest(ev(dev::kStackEmpty, 0, st::obstructed(Signal::Low))));
}

TEST_CASE("rule compilation errors") {
  MonitorConfig cfg;
  core::AnnotatedGraph plain({{ComponentId("A"), ComponentId("B"), std::nullopt}});
  CHECK(code_of([&] { compile_rules(plain, "x", cfg); }) == ErrorCode::MissingAnnotation);

  core::AnnotatedGraph delay({{ComponentId("A"), ComponentId("B"), core::Relationship(core::TimeDuration::relative_to("On", 5))}});
  CHECK(code_of([&] { compile_rules(delay, "x", cfg); }) == ErrorCode::UnsupportedAnnotation);

  core::AnnotatedGraph spatial({{ComponentId("A"), ComponentId("B"), core::Relationship(core::SpatialRelation{})}});
  CHECK(code_of([&] { compile_rules(spatial, "x", cfg); }) == ErrorCode::UnsupportedAnnotation);

  auto inverted = core::TemporalConstraint{st::active(), core::TimeDurationRange::relative_to("Active", 10, 5), st::passive()};
  core::AnnotatedGraph bad_range({{ComponentId("A"), ComponentId("B"), core::Relationship(inverted)}});
  CHECK(code_of([&] { compile_rules(bad_range, "x", cfg); }) == ErrorCode::InvalidRule);

  // Bound measured from a fixed origin rather than from the cause.
  core::TimeDuration absolute{core::SymbolicScalar::constant(0), core::SymbolicScalar::variable("Active")};
  auto drifting = core::TemporalConstraint{st::active(), {absolute, absolute}, st::passive()};
  core::AnnotatedGraph drift({{ComponentId("A"), ComponentId("B"), core::Relationship(drifting)}});
  CHECK(code_of([&] { compile_rules(drift, "x", cfg); }) == ErrorCode::InvalidRule);

  MonitorConfig negative;
  negative.correlation_tolerance_ms = -1;
  CHECK(code_of([&] { compile_rules(plain, "x", negative); }) == ErrorCode::InvalidConfig);

  MonitorConfig short_horizon;
  short_horizon.history_horizon_ms = 100;
  auto avoid = rule(dev::kStackEjectorExtend, dev::kLoaderPickup, st::active(), -500, 1000, st::passive());
  CHECK(code_of([&] { Monitor({avoid}, short_horizon); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("history stays within the horizon") {
  auto avoid = rule(dev::kStackEjectorExtend, dev::kLoaderPickup, st::active(), -500, 1000, st::passive());
  Monitor m({avoid}, {});
  for (std::int64_t t = 0; t < 20000; t += 10) m.ingest(ev(dev::kStackEmpty, t, st::obstructed(Signal::Low)));
  CHECK(m.retained_history() <= 51);
}

TEST_CASE("state-holds semantics") {
  MonitorConfig cfg;
  cfg.semantics = Semantics::StateHolds;
  auto avoid = rule(dev::kStackEjectorExtend, dev::kLoaderPickup, st::active(), -500, 1000, st::passive());
  auto cause = ev(dev::kStackEjectorExtend, 2000, st::active(Signal::High));
  auto passive = ev(dev::kLoaderPickup, 100, st::passive(Signal::Low));
  auto tick = ev(dev::kStackEmpty, 3500, st::obstructed(Signal::Low));

  auto v = check_trace({avoid}, {passive, cause, tick}, cfg);
  REQUIRE(v.size() == 1);
  CHECK(v[0].outcome == Outcome::Satisfied);
  CHECK(v[0].witness == passive);
  CHECK(v[0].decided_at.ms == 3500);

  // Pickup energised inside the window.
  auto active = ev(dev::kLoaderPickup, 2500, st::active(Signal::High));
  v = check_trace({avoid}, {passive, cause, active, tick}, cfg);
  CHECK(v.at(0).outcome == Outcome::ViolatedMissing);
  CHECK(v.at(0).witness == active);

  // Unknown target state.
  v = check_trace({avoid}, {cause, tick}, cfg);
  CHECK(v.at(0).outcome == Outcome::ViolatedMissing);
  CHECK_FALSE(v.at(0).witness.has_value());

  auto inverse = avoid;
  inverse.inverse = true;
  inverse.effect = st::active();
  v = check_trace({inverse}, {passive, cause, active, tick}, cfg);
  CHECK(v.at(0).outcome == Outcome::ViolatedForbidden);
  CHECK(v.at(0).witness == active);
  v = check_trace({inverse}, {passive, cause, tick}, cfg);
  CHECK(v.at(0).outcome == Outcome::Satisfied);
}

TEST_CASE("verdicts are ordered by decision time then rule") {
  auto r0 = causality_rule();
  auto r1 = causality_rule();
  r1.edge_index = 1;
  r1.min_ms = 0;
  r1.max_ms = 100;
  auto v = check_trace({r0, r1}, {kCause, ev(dev::kStackEjectorRetracted, 1050, st::unobstructed(Signal::Low)),
                                  ev(dev::kStackEjectorRetracted, 1250, st::unobstructed(Signal::Low))}, {});
  REQUIRE(v.size() == 2);
  CHECK(v[0].edge_index == 1);
  CHECK(v[1].edge_index == 0);
  CHECK(std::is_sorted(v.begin(), v.end(), verdict_order));
}

TEST_CASE("names parse") {
  CHECK(parse_semantics("event") == Semantics::EventOccurrence);
  CHECK(parse_semantics("state-holds") == Semantics::StateHolds);
  CHECK_FALSE(parse_semantics("fuzzy").has_value());
  for (auto o : {Outcome::Satisfied, Outcome::ViolatedMissing, Outcome::ViolatedEarly, Outcome::ViolatedLate,
                 Outcome::ViolatedForbidden, Outcome::Pending}) {
    CHECK(parse_outcome(to_string(o)) == o);
  }
}

TEST_CASE("spatial check") {
  auto report = check_spatial(cat());
  const SpatialEntry* sensors = nullptr;
  for (const auto& e : report.entries) {
    CHECK(e.device_a < e.device_b);
    if (e.device_a.str() == dev::kStackEjectorExtended && e.device_b.str() == dev::kStackEjectorRetracted) sensors = &e;
  }
  REQUIRE(sensors != nullptr);
  CHECK_FALSE(sensors->overlap);
  CHECK(sensors->shared_volume == 0);
  CHECK(report.violations() == 0);

  auto documented = check_spatial(cat(), {true});
  CHECK(documented.overlaps() == 0);
  CHECK(documented.entries.size() == 1);

  std::map<ComponentId, core::Box3D> boxes{{ComponentId("a"), core::Box3D(53, 198, 4, 85, 208, 20)},
                                           {ComponentId("b"), core::Box3D(53, 198, 4, 85, 208, 20)}};
  auto dup = check_spatial(boxes);
  REQUIRE(dup.entries.size() == 1);
  CHECK(dup.entries[0].overlap);
  CHECK(dup.entries[0].shared_volume == 5120);
  CHECK(dup.violations() == 1);
  CHECK(check_spatial(std::map<ComponentId, core::Box3D>{{ComponentId("a"), core::Box3D(0, 0, 0, 1, 1, 1)}}).entries.empty());
}
