#include "factory/monitor/spatial.hpp"

#include <algorithm>

namespace factory::monitor {

std::size_t SpatialReport::overlaps() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.overlap; }));
}

std::size_t SpatialReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.violation(); }));
}

SpatialReport check_spatial(const std::map<core::ComponentId, core::Box3D>& boxes) {
  SpatialReport report;
  for (auto a = boxes.begin(); a != boxes.end(); ++a) {
    for (auto b = std::next(a); b != boxes.end(); ++b) {
      SpatialEntry e{a->first, b->first};
      e.overlap = core::overlaps(a->second, b->second);
      e.shared_volume = core::shared_volume(a->second, b->second);
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

SpatialReport check_spatial(const station::StationCatalog& catalog, SpatialOptions options) {
  auto boxes = station::sensor_boxes(catalog);
  if (options.documented_only) {
    std::erase_if(boxes, [&](const auto& kv) {
      return catalog.is_synthetic(kv.first, station::keys::kSpatialLocation);
    });
  }
  SpatialReport report = check_spatial(boxes);
  for (auto& e : report.entries) {
    e.mounted = catalog.part_association(e.device_a) == e.device_b || catalog.part_association(e.device_b) == e.device_a;
  }
  return report;
}

}  // namespace factory::monitor
