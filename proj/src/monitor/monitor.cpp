#include "factory/monitor/monitor.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "factory/core/error.hpp"

namespace factory::monitor {

namespace {

std::string lower(std::string_view s) {
  std::string r(s);
  for (char& ch : r) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return r;
}

// Offset of a window bound from the cause time. Bound expressions are bound to
// the cause time; the result must not depend on it.
std::int64_t offset_of(const core::TimeDuration& d, const std::string& cause_name, const std::string& where) {
  core::Binding at0{{cause_name, 0}};
  core::Binding at1{{cause_name, 1}};
  std::int64_t v0 = d.value(at0);
  if (d.value(at1) != v0) throw Error(ErrorCode::InvalidRule, where + ": window moves with the cause time");
  return v0;
}

}  // namespace

std::string_view to_string(Semantics s) {
  return s == Semantics::EventOccurrence ? "event-occurrence" : "state-holds";
}

std::optional<Semantics> parse_semantics(std::string_view text) {
  std::string t = lower(text);
  if (t == "event" || t == "event-occurrence" || t == "event_occurrence") return Semantics::EventOccurrence;
  if (t == "state" || t == "state-holds" || t == "state_holds") return Semantics::StateHolds;
  return std::nullopt;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Satisfied: return "Satisfied";
    case Outcome::ViolatedMissing: return "ViolatedMissing";
    case Outcome::ViolatedEarly: return "ViolatedEarly";
    case Outcome::ViolatedLate: return "ViolatedLate";
    case Outcome::ViolatedForbidden: return "ViolatedForbidden";
    case Outcome::Pending: return "Pending";
  }
  return "?";
}

std::optional<Outcome> parse_outcome(std::string_view text) {
  for (Outcome o : {Outcome::Satisfied, Outcome::ViolatedMissing, Outcome::ViolatedEarly, Outcome::ViolatedLate,
                    Outcome::ViolatedForbidden, Outcome::Pending}) {
    if (to_string(o) == text) return o;
  }
  return std::nullopt;
}

bool is_violation(Outcome o) noexcept {
  return o != Outcome::Satisfied && o != Outcome::Pending;
}

std::vector<CompiledRule> compile_rules(const core::AnnotatedGraph& graph, std::string_view topology,
                                        const MonitorConfig& cfg) {
  if (cfg.correlation_tolerance_ms < 0) throw Error(ErrorCode::InvalidConfig, "negative correlation tolerance");
  std::vector<CompiledRule> rules;
  for (std::size_t k = 0; k < graph.size(); ++k) {
    const core::EdgeAnn& edge = graph.edges()[k];
    std::string where = std::string(topology) + " edge " + std::to_string(k);
    if (!edge.annotation) throw Error(ErrorCode::MissingAnnotation, where);
    CompiledRule r{std::string(topology), k, edge.source, edge.target, {}, {}, 0, 0, false, false};
    if (const auto* corr = std::get_if<core::TemporalCorrelation>(&*edge.annotation)) {
      std::int64_t delta = core::to_milliseconds(offset_of(corr->duration, corr->cause.name, where), cfg.sequence_unit);
      r.cause = corr->cause;
      r.effect = corr->effect;
      r.min_ms = delta - cfg.correlation_tolerance_ms;
      r.max_ms = delta + cfg.correlation_tolerance_ms;
      r.correlation = true;
    } else if (const auto* con = std::get_if<core::TemporalConstraint>(&*edge.annotation)) {
      r.cause = con->cause;
      r.effect = con->effect;
      r.min_ms = offset_of(con->range.minimum, con->cause.name, where);
      r.max_ms = offset_of(con->range.maximum, con->cause.name, where);
      if (r.min_ms > r.max_ms) throw Error(ErrorCode::InvalidRule, where + ": minimum exceeds maximum");
      r.inverse = con->inverse;
    } else {
      throw Error(ErrorCode::UnsupportedAnnotation, where);
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

std::vector<CompiledRule> compile_catalog_rules(const station::StationCatalog& catalog,
                                                const std::vector<station::TopologyName>& names,
                                                const MonitorConfig& cfg) {
  std::vector<station::TopologyName> chosen = names;
  if (chosen.empty()) chosen.assign(std::begin(station::kAllTopologies), std::end(station::kAllTopologies));
  std::vector<CompiledRule> rules;
  for (auto name : chosen) {
    auto part = compile_rules(catalog.topology(name).graph, station::to_string(name), cfg);
    rules.insert(rules.end(), part.begin(), part.end());
  }
  return rules;
}

bool verdict_order(const Verdict& a, const Verdict& b) {
  return std::tie(a.decided_at, a.topology, a.edge_index, a.cause_index) <
         std::tie(b.decided_at, b.topology, b.edge_index, b.cause_index);
}

void sort_verdicts(std::vector<Verdict>& verdicts) {
  std::stable_sort(verdicts.begin(), verdicts.end(), verdict_order);
}

// ---- Monitor ----

Monitor::Monitor(std::vector<CompiledRule> rules, MonitorConfig cfg, std::set<ComponentId> known_devices)
    : rules_(std::move(rules)), cfg_(std::move(cfg)), known_(std::move(known_devices)) {
  std::int64_t needed = 0;
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    if (rules_[k].min_ms > rules_[k].max_ms) throw Error(ErrorCode::InvalidRule, "minimum exceeds maximum");
    needed = std::max(needed, -rules_[k].min_ms);
    by_source_[rules_[k].source].push_back(k);
  }
  if (cfg_.history_horizon_ms) {
    if (*cfg_.history_horizon_ms < needed) {
      throw Error(ErrorCode::InvalidConfig, "history horizon " + std::to_string(*cfg_.history_horizon_ms) +
                                                " ms is shorter than the " + std::to_string(needed) +
                                                " ms lookback a rule needs");
    }
    horizon_ = *cfg_.history_horizon_ms;
  } else {
    horizon_ = needed;
  }
}

Verdict Monitor::make_verdict(const Obligation& ob, Outcome outcome, const std::optional<Seen>& witness,
                              std::int64_t decided_at) const {
  const CompiledRule& r = rules_[ob.rule];
  Verdict v{r.topology, r.edge_index, r.source, r.target, ob.cause.event, ob.cause.index, outcome,
            std::nullopt, TimePoint{decided_at}};
  if (witness) v.witness = witness->event;
  return v;
}

std::optional<Monitor::Seen> Monitor::state_at(const ComponentId& device, std::int64_t t) const {
  for (auto it = history_.rbegin(); it != history_.rend(); ++it) {
    if (it->event.owner == device && it->event.timepoint.ms <= t) return *it;
  }
  if (auto it = evicted_last_.find(device); it != evicted_last_.end() && it->second.event.timepoint.ms <= t) {
    return it->second;
  }
  return std::nullopt;
}

void Monitor::arm(Obligation& ob, const std::optional<Seen>& initial) {
  const CompiledRule& r = rules_[ob.rule];
  ob.armed = true;
  ob.initial = initial;
  bool holds = initial && ia::state_matches(r.effect, initial->event.state);
  if (r.inverse ? holds : !holds) {
    ob.failed = true;
    ob.failure = initial;
  }
}

void Monitor::observe_state(Obligation& ob, const Seen& e) {
  const CompiledRule& r = rules_[ob.rule];
  if (ob.failed) return;
  bool holds = ia::state_matches(r.effect, e.event.state);
  if (r.inverse ? holds : !holds) {
    ob.failed = true;
    ob.failure = e;
  }
}

Verdict Monitor::expire_state(const Obligation& ob, std::int64_t at) const {
  if (rules_[ob.rule].inverse) {
    return ob.failed ? make_verdict(ob, Outcome::ViolatedForbidden, ob.failure, at)
                     : make_verdict(ob, Outcome::Satisfied, std::nullopt, at);
  }
  return ob.failed ? make_verdict(ob, Outcome::ViolatedMissing, ob.failure, at)
                   : make_verdict(ob, Outcome::Satisfied, ob.initial, at);
}

Verdict Monitor::expire_event(const Obligation& ob, std::int64_t at) const {
  if (rules_[ob.rule].inverse) return make_verdict(ob, Outcome::Satisfied, std::nullopt, at);
  if (ob.early) return make_verdict(ob, Outcome::ViolatedEarly, ob.early, at);
  return make_verdict(ob, Outcome::ViolatedMissing, std::nullopt, at);
}

// `e` is an effect-matching event of the obligation's target. True when decided.
bool Monitor::match_event(Obligation& ob, const Seen& e, std::vector<Verdict>& out) {
  const CompiledRule& r = rules_[ob.rule];
  std::int64_t t = e.event.timepoint.ms;
  if (r.inverse) {
    if (t < ob.lo || t > ob.hi) return false;
    out.push_back(make_verdict(ob, Outcome::ViolatedForbidden, e, t));
    return true;
  }
  if (t < ob.lo) {
    // An early effect decides nothing yet: an in-window one may still follow.
    if (!ob.early) ob.early = e;
    return false;
  }
  if (t <= ob.hi) {
    out.push_back(make_verdict(ob, Outcome::Satisfied, e, t));
  } else if (ob.early) {
    out.push_back(make_verdict(ob, Outcome::ViolatedEarly, ob.early, t));
  } else {
    out.push_back(make_verdict(ob, Outcome::ViolatedLate, e, t));
  }
  return true;
}

void Monitor::open(std::size_t rule, const Seen& cause, std::vector<Verdict>& out) {
  const CompiledRule& r = rules_[rule];
  std::int64_t c = cause.event.timepoint.ms;
  Obligation ob{rule, cause, c + r.min_ms, c + r.max_ms, std::nullopt, false, std::nullopt, std::nullopt, false, std::nullopt};

  if (cfg_.semantics == Semantics::EventOccurrence) {
    if (ob.lo <= c) {
      for (const Seen& h : history_) {
        std::int64_t t = h.event.timepoint.ms;
        if (h.index == cause.index || h.event.owner != r.target || t < ob.lo || t > ob.hi) continue;
        if (!ia::state_matches(r.effect, h.event.state)) continue;
        out.push_back(make_verdict(ob, r.inverse ? Outcome::ViolatedForbidden : Outcome::Satisfied, h, c));
        return;
      }
    }
    if (ob.hi < c) {
      out.push_back(expire_event(ob, c));
      return;
    }
  } else {
    if (ob.lo < c) {
      arm(ob, state_at(r.target, ob.lo));
      for (const Seen& h : history_) {
        std::int64_t t = h.event.timepoint.ms;
        if (h.event.owner == r.target && t > ob.lo && t <= ob.hi) observe_state(ob, h);
      }
      if (ob.hi < c) {
        out.push_back(expire_state(ob, c));
        return;
      }
    } else if (auto it = current_.find(r.target); it != current_.end()) {
      ob.tracked = it->second;
    }
  }
  open_.push_back(std::move(ob));
}

std::vector<Verdict> Monitor::ingest(const StateChangeEvent& e) {
  std::int64_t t = e.timepoint.ms;
  if (last_time_ && t < *last_time_) {
    throw Error(ErrorCode::OutOfOrderEvent, e.owner.str() + " at " + std::to_string(t) + " after " +
                                                std::to_string(*last_time_));
  }
  if (!known_.empty() && !known_.contains(e.owner)) throw Error(ErrorCode::UnknownDevice, e.owner.str());
  last_time_ = t;
  Seen seen{e, next_index_++};
  std::vector<Verdict> out;

  // Existing obligations see the event first; a new obligation never matches its own cause.
  std::vector<Obligation> still_open;
  still_open.reserve(open_.size());
  for (Obligation& ob : open_) {
    const CompiledRule& r = rules_[ob.rule];
    bool decided = false;
    if (cfg_.semantics == Semantics::EventOccurrence) {
      if (e.owner == r.target && ia::state_matches(r.effect, e.state)) decided = match_event(ob, seen, out);
      if (!decided && ob.hi < t) {
        out.push_back(expire_event(ob, t));
        decided = true;
      }
    } else {
      if (!ob.armed && t > ob.lo) arm(ob, ob.tracked);
      if (ob.armed && t > ob.hi) {
        out.push_back(expire_state(ob, t));
        decided = true;
      } else if (e.owner == r.target) {
        if (ob.armed) {
          observe_state(ob, seen);
        } else {
          ob.tracked = seen;
        }
      }
    }
    if (!decided) still_open.push_back(std::move(ob));
  }
  open_ = std::move(still_open);

  current_.insert_or_assign(e.owner, seen);
  history_.push_back(seen);
  if (auto it = by_source_.find(e.owner); it != by_source_.end()) {
    for (std::size_t k : it->second) {
      if (ia::state_matches(rules_[k].cause, e.state)) open(k, seen, out);
    }
  }

  std::int64_t cutoff = t - horizon_;
  while (!history_.empty() && history_.front().event.timepoint.ms < cutoff) {
    evicted_last_.insert_or_assign(history_.front().event.owner, history_.front());
    history_.pop_front();
  }
  sort_verdicts(out);
  return out;
}

std::vector<Verdict> Monitor::finalize(TimePoint end) {
  if (last_time_ && end.ms < *last_time_) {
    throw Error(ErrorCode::OutOfOrderEvent, "finalize at " + std::to_string(end.ms) + " before last event " +
                                                std::to_string(*last_time_));
  }
  std::vector<Verdict> out;
  for (Obligation& ob : open_) {
    if (ob.hi > end.ms) {
      out.push_back(make_verdict(ob, Outcome::Pending, std::nullopt, end.ms));
    } else if (cfg_.semantics == Semantics::EventOccurrence) {
      out.push_back(expire_event(ob, end.ms));
    } else {
      if (!ob.armed) arm(ob, ob.tracked);
      out.push_back(expire_state(ob, end.ms));
    }
  }
  open_.clear();
  sort_verdicts(out);
  return out;
}

std::vector<Verdict> check_trace(const std::vector<CompiledRule>& rules, const std::vector<StateChangeEvent>& trace,
                                 const MonitorConfig& cfg, std::set<ComponentId> known_devices) {
  Monitor m(rules, cfg, std::move(known_devices));
  std::vector<Verdict> all;
  for (const auto& e : trace) {
    auto v = m.ingest(e);
    all.insert(all.end(), v.begin(), v.end());
  }
  if (!trace.empty()) {
    auto v = m.finalize(trace.back().timepoint);
    all.insert(all.end(), v.begin(), v.end());
  }
  sort_verdicts(all);
  return all;
}

std::vector<Verdict> check_trace(const station::StationCatalog& catalog, const core::AnnotatedGraph& topology,
                                 const std::vector<ia::PhysicalEvent>& trace, const MonitorConfig& cfg,
                                 std::string_view topology_name) {
  std::set<ComponentId> known;
  for (const auto& [id, kind] : catalog.devices) known.insert(id);
  std::vector<StateChangeEvent> events;
  events.reserve(trace.size());
  for (const auto& e : trace) events.push_back(e.as_state_change());
  return check_trace(compile_rules(topology, topology_name, cfg), events, cfg, std::move(known));
}

}  // namespace factory::monitor
