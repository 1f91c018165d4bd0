#include "factory/core/graph.hpp"

#include <algorithm>

#include "factory/core/error.hpp"

namespace factory::core {

AnnotatedGraph::AnnotatedGraph(std::vector<EdgeAnn> edges) {
  edges_.reserve(edges.size());
  for (auto& e : edges) {
    add(std::move(e));
  }
}

void AnnotatedGraph::add(EdgeAnn edge) {
  if (std::find(edges_.begin(), edges_.end(), edge) != edges_.end()) {
    throw Error(ErrorCode::InvalidArgument,
                "duplicate edge " + edge.source.str() + " -> " + edge.target.str() + " with identical annotation");
  }
  edges_.push_back(std::move(edge));
}

std::set<ComponentId> AnnotatedGraph::nodes() const {
  std::set<ComponentId> out;
  for (const auto& e : edges_) {
    out.insert(e.source);
    out.insert(e.target);
  }
  return out;
}

std::vector<EdgeAnn> AnnotatedGraph::edges_from(const ComponentId& node) const {
  std::vector<EdgeAnn> out;
  std::copy_if(edges_.begin(), edges_.end(), std::back_inserter(out),
               [&](const EdgeAnn& e) { return e.source == node; });
  return out;
}

}  // namespace factory::core
