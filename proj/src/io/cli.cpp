#include "factory/io/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "factory/core/error.hpp"
#include "factory/io/dot.hpp"
#include "factory/io/json_codec.hpp"
#include "factory/io/trace_io.hpp"
#include "factory/monitor/monitor.hpp"
#include "factory/monitor/spatial.hpp"
#include "factory/sim/simulator.hpp"
#include "factory/station/catalog.hpp"

namespace factory::io {

namespace {

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::string slurp(const std::string& path, Streams& s) {
  if (path == "-") {
    std::ostringstream ss;
    ss << s.in.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

void emit(const std::string& path, const std::string& content, Streams& s) {
  if (path == "-") {
    s.out << content;
  } else {
    write_file(path, content);
  }
}

std::vector<station::TopologyName> topologies_from(const std::string& text) {
  if (text == "all") return {std::begin(station::kAllTopologies), std::end(station::kAllTopologies)};
  auto name = station::parse_topology_name(text);
  if (!name) throw Error(ErrorCode::InvalidArgument, "unknown topology \"" + text + "\"");
  return {*name};
}

struct DumpArgs {
  std::string topology = "all";
  std::string format = "json";
  std::string trace;
};

int run_dump(const DumpArgs& a, Streams& s) {
  auto catalog = station::build_catalog();
  auto names = topologies_from(a.topology);
  if (a.format == "json") {
    s.out << catalog_to_json(catalog, names).dump(2) << '\n';
    return kExitOk;
  }
  std::map<core::ComponentId, core::DeviceState> last;
  if (!a.trace.empty()) {
    std::istringstream text(slurp(a.trace, s));
    for (const auto& e : read_trace(text)) last.insert_or_assign(e.device(), e.state());
  }
  for (auto name : names) s.out << export_dot(catalog.topology(name).graph, last, station::to_string(name));
  return kExitOk;
}

struct SimulateArgs {
  std::string scenario;
  std::string faults;
  std::string out;
  std::uint64_t seed = 0;
  int stack = 5;
  int jitter_ms = 0;
};

int run_simulate(const SimulateArgs& a, Streams& s) {
  if (a.scenario == "-" && a.faults == "-") throw Error(ErrorCode::InvalidArgument, "only one input may be stdin");
  auto catalog = station::build_catalog();
  std::istringstream scenario_text(slurp(a.scenario, s));
  sim::CommandScript script = read_scenario(scenario_text);
  sim::validate_script(catalog, script);
  sim::SimConfig cfg;
  cfg.stack_count = a.stack;
  cfg.seed = a.seed;
  cfg.jitter_ms = a.jitter_ms;
  if (!a.faults.empty()) {
    std::istringstream fault_text(slurp(a.faults, s));
    cfg.faults = read_faults(fault_text);
  }
  std::ostringstream trace;
  sim::sim_run(catalog, script, std::move(cfg), [&](const ia::PhysicalEvent& e) { trace << event_to_line(e) << '\n'; });
  emit(a.out, trace.str(), s);
  return kExitOk;
}

struct MonitorArgs {
  std::string trace;
  std::string topology = "all";
  std::string report;
  std::string semantics = "event";
  std::string sequence_unit = "seconds";
  std::int64_t tolerance_ms = 0;
  std::int64_t horizon_ms = -1;
};

int run_monitor(const MonitorArgs& a, Streams& s) {
  auto catalog = station::build_catalog();
  monitor::MonitorConfig cfg;
  cfg.correlation_tolerance_ms = a.tolerance_ms;
  auto sem = monitor::parse_semantics(a.semantics);
  if (!sem) throw Error(ErrorCode::InvalidArgument, "unknown semantics \"" + a.semantics + "\"");
  cfg.semantics = *sem;
  if (a.sequence_unit == "seconds" || a.sequence_unit == "s") {
    cfg.sequence_unit = core::TimeUnit::Seconds;
  } else if (a.sequence_unit == "milliseconds" || a.sequence_unit == "ms") {
    cfg.sequence_unit = core::TimeUnit::Milliseconds;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown sequence unit \"" + a.sequence_unit + "\"");
  }
  if (a.horizon_ms >= 0) cfg.history_horizon_ms = a.horizon_ms;

  auto rules = monitor::compile_catalog_rules(catalog, topologies_from(a.topology), cfg);
  std::istringstream text(slurp(a.trace, s));
  std::vector<core::StateChangeEvent> events;
  for (const auto& e : read_trace(text)) events.push_back(e.as_state_change());
  std::set<core::ComponentId> known;
  for (const auto& [id, kind] : catalog.devices) known.insert(id);
  auto verdicts = monitor::check_trace(rules, events, cfg, known);

  std::size_t violations = 0;
  std::size_t pending = 0;
  for (const auto& v : verdicts) {
    violations += monitor::is_violation(v.outcome) ? 1 : 0;
    pending += v.outcome == monitor::Outcome::Pending ? 1 : 0;
  }
  emit(a.report, verdicts_to_json(verdicts).dump(2) + "\n", s);
  s.err << verdicts.size() << " verdicts, " << violations << " violations, " << pending << " pending\n";
  return violations == 0 ? kExitOk : kExitViolations;
}

int run_spatial(bool documented_only, Streams& s) {
  auto catalog = station::build_catalog();
  auto report = monitor::check_spatial(catalog, {documented_only});
  s.out << spatial_report_to_json(report).dump(2) << '\n';
  return report.violations() == 0 ? kExitOk : kExitViolations;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams s{in, out, err};
  CLI::App app{"Cap Dispenser modelling, simulation and runtime monitoring", "stationctl"};
  app.require_subcommand(1);

  DumpArgs dump;
  auto* model = app.add_subcommand("model", "Inspect the station model");
  model->require_subcommand(1);
  auto* dump_cmd = model->add_subcommand("dump", "Print devices and topologies");
  dump_cmd->add_option("--topology", dump.topology, "Topology name or 'all'");
  dump_cmd->add_option("--format", dump.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  dump_cmd->add_option("--trace", dump.trace, "Colour DOT nodes by the last states of this trace");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a command scenario through the simulator");
  simulate->add_option("--scenario", sim_args.scenario, "Scenario JSON-lines file")->required();
  simulate->add_option("--faults", sim_args.faults, "Fault JSON-lines file");
  simulate->add_option("--seed", sim_args.seed, "Seed for latency jitter");
  simulate->add_option("--stack", sim_args.stack, "Caps in the stack tube")->check(CLI::NonNegativeNumber);
  simulate->add_option("--jitter-ms", sim_args.jitter_ms, "Uniform latency jitter")->check(CLI::NonNegativeNumber);
  simulate->add_option("--out", sim_args.out, "Trace output file")->required();

  MonitorArgs mon;
  auto* monitor_cmd = app.add_subcommand("monitor", "Check a trace against station topologies");
  monitor_cmd->add_option("--trace", mon.trace, "Trace JSON-lines file")->required();
  monitor_cmd->add_option("--topology", mon.topology, "Topology name or 'all'")->required();
  monitor_cmd->add_option("--report", mon.report, "Verdict report output file")->required();
  monitor_cmd->add_option("--tolerance-ms", mon.tolerance_ms, "Correlation tolerance")->check(CLI::NonNegativeNumber);
  monitor_cmd->add_option("--semantics", mon.semantics, "event or state");
  monitor_cmd->add_option("--sequence-unit", mon.sequence_unit, "Unit of correlation constants: seconds or ms");
  monitor_cmd->add_option("--horizon-ms", mon.horizon_ms, "History horizon (default: derived from rules)");

  bool documented_only = false;
  auto* spatial = app.add_subcommand("check-spatial", "Pairwise overlap check of device boxes");
  spatial->add_flag("--documented-only", documented_only, "Skip placeholder geometry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*model) return run_dump(dump, s);
    if (*simulate) return run_simulate(sim_args, s);
    if (*monitor_cmd) return run_monitor(mon, s);
    if (*spatial) return run_spatial(documented_only, s);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace factory::io
