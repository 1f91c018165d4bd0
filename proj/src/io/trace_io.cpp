#include "factory/io/trace_io.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "factory/core/error.hpp"
#include "factory/io/json_codec.hpp"

namespace factory::io {

namespace {

// Calls `fn(json, line_number)` for every non-blank line, prefixing errors with the line.
void for_each_line(std::istream& in, const std::function<void(const json&, std::size_t)>& fn) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(parse_json(line), n);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(n) + ": " + e.detail());
    }
  }
}

std::string string_at(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::SchemaViolation, std::string("$.") + key + ": expected a string");
  }
  return it->get<std::string>();
}

std::int64_t int_at(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::SchemaViolation, std::string("$.") + key + ": expected an integer");
  }
  return it->get<std::int64_t>();
}

core::ComponentId id_at(const json& j, const char* key) {
  std::string s = string_at(j, key);
  if (s.empty()) throw Error(ErrorCode::SchemaViolation, std::string("$.") + key + ": empty name");
  return core::ComponentId(s);
}

}  // namespace

std::string event_to_line(const ia::PhysicalEvent& event) {
  return event_to_json(event).dump();
}

void write_trace(std::ostream& out, const std::vector<ia::PhysicalEvent>& events) {
  for (const auto& e : events) out << event_to_line(e) << '\n';
}

std::vector<ia::PhysicalEvent> read_trace(std::istream& in) {
  std::vector<ia::PhysicalEvent> events;
  for_each_line(in, [&](const json& j, std::size_t) {
    ia::PhysicalEvent e = event_from_json(j);
    if (!events.empty() && e.timepoint() < events.back().timepoint()) {
      throw Error(ErrorCode::OutOfOrderEvent, "timepoint " + std::to_string(e.timepoint().ms) + " after " +
                                                  std::to_string(events.back().timepoint().ms));
    }
    events.push_back(std::move(e));
  });
  return events;
}

void write_scenario(std::ostream& out, const sim::CommandScript& script) {
  for (const auto& c : script) {
    json j = {{"time_ms", c.time.ms}, {"actuator", c.actuator.str()}, {"signal", std::string(core::to_string(c.signal))}};
    out << j.dump() << '\n';
  }
}

std::vector<sim::Command> read_scenario(std::istream& in) {
  std::vector<sim::Command> script;
  for_each_line(in, [&](const json& j, std::size_t) {
    if (!j.is_object()) throw Error(ErrorCode::SchemaViolation, "$: expected an object");
    auto sig = core::parse_signal(string_at(j, "signal"));
    if (!sig || *sig == core::Signal::DontCare) {
      throw Error(ErrorCode::SchemaViolation, "$.signal: expected \"High\" or \"Low\"");
    }
    script.push_back({core::TimePoint{int_at(j, "time_ms")}, id_at(j, "actuator"), *sig});
  });
  return script;
}

void write_faults(std::ostream& out, const std::vector<sim::FaultSpec>& faults) {
  for (const auto& fault : faults) {
    json j = std::visit(
        [](const auto& f) -> json {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, sim::LatencyOverride>) {
            json o = {{"type", "LatencyOverride"}, {"device", f.device.str()}};
            if (f.transition) o["transition"] = *f.transition;
            o["latency_ms"] = f.latency_ms;
            return o;
          } else if constexpr (std::is_same_v<F, sim::StuckSensor>) {
            return {{"type", "StuckSensor"}, {"device", f.device.str()}, {"state", state_to_json(f.state)}};
          } else {
            return {{"type", "DropEvents"}, {"device", f.device.str()}};
          }
        },
        fault);
    out << j.dump() << '\n';
  }
}

std::vector<sim::FaultSpec> read_faults(std::istream& in) {
  std::vector<sim::FaultSpec> faults;
  for_each_line(in, [&](const json& j, std::size_t) {
    if (!j.is_object()) throw Error(ErrorCode::SchemaViolation, "$: expected an object");
    std::string tag = string_at(j, "type");
    if (tag == "LatencyOverride") {
      sim::LatencyOverride f{id_at(j, "device"), std::nullopt, int_at(j, "latency_ms")};
      if (j.contains("transition")) f.transition = string_at(j, "transition");
      if (f.latency_ms < 0) throw Error(ErrorCode::SchemaViolation, "$.latency_ms: negative latency");
      faults.emplace_back(std::move(f));
    } else if (tag == "StuckSensor") {
      auto it = j.find("state");
      if (it == j.end()) throw Error(ErrorCode::SchemaViolation, "$: missing key \"state\"");
      faults.emplace_back(sim::StuckSensor{id_at(j, "device"), state_from_json(*it, "$.state")});
    } else if (tag == "DropEvents") {
      faults.emplace_back(sim::DropEvents{id_at(j, "device")});
    } else {
      throw Error(ErrorCode::UnknownTypeTag, tag + " at $");
    }
  });
  return faults;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace factory::io
