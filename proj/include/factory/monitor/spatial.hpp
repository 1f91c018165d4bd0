#pragma once

#include <cstdint>
#include <vector>

#include "factory/core/box.hpp"
#include "factory/station/catalog.hpp"

namespace factory::monitor {

struct SpatialEntry {
  core::ComponentId device_a;  // device_a < device_b
  core::ComponentId device_b;
  bool overlap = false;
  std::int64_t shared_volume = 0;
  // One device is the part the other is mounted on; overlap is expected.
  bool mounted = false;

  bool violation() const noexcept { return overlap && !mounted; }

  friend bool operator==(const SpatialEntry&, const SpatialEntry&) = default;
};

struct SpatialReport {
  std::vector<SpatialEntry> entries;

  std::size_t overlaps() const;
  std::size_t violations() const;
};

struct SpatialOptions {
  // Skip devices whose location is a chosen placeholder rather than a measured one.
  bool documented_only = false;
};

// Every unordered pair of located devices, listed once, sorted by name.
SpatialReport check_spatial(const station::StationCatalog& catalog, SpatialOptions options = {});

// Same over an explicit box set; `mounted` is never set.
SpatialReport check_spatial(const std::map<core::ComponentId, core::Box3D>& boxes);

}  // namespace factory::monitor
