#pragma once

#include <optional>
#include <set>
#include <vector>

#include "factory/core/component.hpp"
#include "factory/core/rules.hpp"

namespace factory::core {

// Directed edge with an optional annotation. A plain edge has no annotation.
struct EdgeAnn {
  ComponentId source;
  ComponentId target;
  std::optional<Relationship> annotation;

  friend bool operator==(const EdgeAnn&, const EdgeAnn&) = default;
};

// Conjunction of annotated edges. Parallel edges are allowed only when their
// annotations differ.
class AnnotatedGraph {
 public:
  AnnotatedGraph() = default;
  explicit AnnotatedGraph(std::vector<EdgeAnn> edges);

  // Throws InvalidArgument on an exact duplicate edge.
  void add(EdgeAnn edge);

  const std::vector<EdgeAnn>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  std::set<ComponentId> nodes() const;
  // Edges leaving `node`, in insertion order.
  std::vector<EdgeAnn> edges_from(const ComponentId& node) const;

  friend bool operator==(const AnnotatedGraph&, const AnnotatedGraph&) = default;

 private:
  std::vector<EdgeAnn> edges_;
};

}  // namespace factory::core
