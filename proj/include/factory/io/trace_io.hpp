#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "factory/ia/metamodel.hpp"
#include "factory/sim/simulator.hpp"

namespace factory::io {

// JSON-lines files. Blank lines are skipped; errors name the 1-based line.

std::string event_to_line(const ia::PhysicalEvent& event);

void write_trace(std::ostream& out, const std::vector<ia::PhysicalEvent>& events);
// Throws MalformedJson/SchemaViolation/UnknownTypeTag("line N: ..."),
// OutOfOrderEvent("line N: ...") when a timestamp decreases.
std::vector<ia::PhysicalEvent> read_trace(std::istream& in);

// Lines of {"time_ms":..., "actuator":..., "signal":"High"|"Low"}.
void write_scenario(std::ostream& out, const sim::CommandScript& script);
std::vector<sim::Command> read_scenario(std::istream& in);

// Lines of {"type":"LatencyOverride","device":...,"transition":...,"latency_ms":...},
// {"type":"StuckSensor","device":...,"state":{"type":...}} or {"type":"DropEvents","device":...}.
void write_faults(std::ostream& out, const std::vector<sim::FaultSpec>& faults);
std::vector<sim::FaultSpec> read_faults(std::istream& in);

// Whole-file helpers; throw Io when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace factory::io
