#include "factory/io/dot.hpp"

#include <sstream>

#include "factory/core/error.hpp"
#include "factory/ia/metamodel.hpp"

namespace factory::io {

namespace {

std::string quoted(std::string_view s) {
  std::string r = "\"";
  for (char ch : s) {
    if (ch == '"') r += '\\';
    r += ch;
  }
  return r + "\"";
}

std::string offset(const core::TimeDuration& d, const std::string& cause) {
  try {
    return std::to_string(d.value(core::Binding{{cause, 0}}));
  } catch (const Error&) {
    return "?";
  }
}

std::string window(const std::string& lo, const std::string& hi) {
  return "[" + lo + "," + hi + "]";
}

}  // namespace

std::string edge_label(const core::EdgeAnn& edge) {
  if (!edge.annotation) return "";
  const core::Relationship& r = *edge.annotation;
  if (const auto* c = std::get_if<core::TemporalCorrelation>(&r)) {
    std::string d = offset(c->duration, c->cause.name);
    return core::to_string(c->cause) + " →" + window(d, d) + "→ " + core::to_string(c->effect);
  }
  if (const auto* c = std::get_if<core::TemporalConstraint>(&r)) {
    return core::to_string(c->cause) + " →" +
           window(offset(c->range.minimum, c->cause.name), offset(c->range.maximum, c->cause.name)) + "→ " +
           core::to_string(c->effect) + (c->inverse ? " (inverse)" : "");
  }
  if (const auto* d = std::get_if<core::TimeDuration>(&r)) {
    std::string start = d->start.kind() == core::SymbolicScalar::Kind::Variable ? d->start.variable_name() : "";
    return "Δ" + offset(*d, start);
  }
  return std::string(core::to_string(std::get<core::SpatialRelation>(r).relation));
}

std::string export_dot(const core::AnnotatedGraph& graph,
                       const std::map<core::ComponentId, core::DeviceState>& last_states, std::string_view title) {
  std::ostringstream out;
  out << "digraph " << quoted(title) << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, style=filled, fontname=\"Helvetica\"];\n";
  for (const auto& node : graph.nodes()) {
    std::string fill = "gray";
    std::string label = node.str();
    if (auto it = last_states.find(node); it != last_states.end()) {
      const std::string& state = it->second.name;
      fill = state == ia::states::kObstructed ? "red" : state == ia::states::kUnobstructed ? "green" : "white";
      label += "\\n" + core::to_string(it->second);
    }
    out << "  " << quoted(node.str()) << " [label=" << quoted(label) << ", fillcolor=" << fill << "];\n";
  }
  for (const auto& edge : graph.edges()) {
    out << "  " << quoted(edge.source.str()) << " -> " << quoted(edge.target.str());
    std::string label = edge_label(edge);
    if (!label.empty()) out << " [label=" << quoted(label) << "]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace factory::io
