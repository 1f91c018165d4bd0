#pragma once

#include <map>
#include <string>
#include <string_view>

#include "factory/core/graph.hpp"

namespace factory::io {

// Edge label: "Active →[200,300]→ Unobstructed"; correlations show [Δ,Δ];
// inverse constraints end in " (inverse)".
std::string edge_label(const core::EdgeAnn& edge);

// Graphviz digraph with one node per topology node, in name order. Fill colour
// tracks the last known state: red Obstructed, green Unobstructed, white any
// other state, gray unknown.
std::string export_dot(const core::AnnotatedGraph& graph,
                       const std::map<core::ComponentId, core::DeviceState>& last_states = {},
                       std::string_view title = "topology");

}  // namespace factory::io
