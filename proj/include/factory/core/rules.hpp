#pragma once

#include <variant>

#include "factory/core/box.hpp"
#include "factory/core/component.hpp"
#include "factory/core/scalar.hpp"
#include "factory/core/state.hpp"
#include "factory/core/time.hpp"

namespace factory::core {

// Effect state change follows the cause state change after exactly `duration`.
struct TemporalCorrelation {
  DeviceState cause;
  TimeDuration duration;
  DeviceState effect;

  friend bool operator==(const TemporalCorrelation&, const TemporalCorrelation&) = default;
};

// Effect state change occurs within `range` of the cause; with `inverse` it must not.
struct TemporalConstraint {
  DeviceState cause;
  TimeDurationRange range;
  DeviceState effect;
  bool inverse = false;

  friend bool operator==(const TemporalConstraint&, const TemporalConstraint&) = default;
};

// Qualitative spatial relationship between the occupancy boxes of two nodes.
struct SpatialRelation {
  BoxRelation relation = BoxRelation::Disjoint;

  friend bool operator==(const SpatialRelation&, const SpatialRelation&) = default;
};

// Edge annotation. A bare TimeDuration is a plain delay annotation.
using Relationship = std::variant<TemporalCorrelation, TemporalConstraint, TimeDuration, SpatialRelation>;

// (owner, time point, new state) triple; the unit of every trace.
struct StateChangeEvent {
  ComponentId owner;
  TimePoint timepoint;
  DeviceState state;

  friend bool operator==(const StateChangeEvent&, const StateChangeEvent&) = default;
};

}  // namespace factory::core
