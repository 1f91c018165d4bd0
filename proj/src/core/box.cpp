#include "factory/core/box.hpp"

#include <algorithm>

#include "factory/core/error.hpp"

namespace factory::core {

Box3D::Box3D(int x1, int y1, int z1, int x2, int y2, int z2)
    : x1_(std::min(x1, x2)),
      y1_(std::min(y1, y2)),
      z1_(std::min(z1, z2)),
      x2_(std::max(x1, x2)),
      y2_(std::max(y1, y2)),
      z2_(std::max(z1, z2)) {}

Box3D Box3D::from_anchor(int x, int y, int z, int width, int depth, int height) {
  if (width < 0 || depth < 0 || height < 0) {
    throw Error(ErrorCode::NegativeExtent, "box extents must be non-negative");
  }
  return Box3D(x, y, z, x + width, y + depth, z + height);
}

std::int64_t Box3D::volume() const noexcept {
  return static_cast<std::int64_t>(x2_ - x1_) * (y2_ - y1_) * (z2_ - z1_);
}

namespace {

// Signed length of the common span on one axis (negative when apart).
int common_span(int a1, int a2, int b1, int b2) noexcept {
  return std::min(a2, b2) - std::max(a1, b1);
}

bool within(const Box3D& inner, const Box3D& outer) noexcept {
  return outer.x1() <= inner.x1() && inner.x2() <= outer.x2() && outer.y1() <= inner.y1() &&
         inner.y2() <= outer.y2() && outer.z1() <= inner.z1() && inner.z2() <= outer.z2();
}

}  // namespace

bool overlaps(const Box3D& a, const Box3D& b) noexcept {
  return common_span(a.x1(), a.x2(), b.x1(), b.x2()) > 0 &&
         common_span(a.y1(), a.y2(), b.y1(), b.y2()) > 0 &&
         common_span(a.z1(), a.z2(), b.z1(), b.z2()) > 0;
}

std::optional<Box3D> intersection(const Box3D& a, const Box3D& b) {
  if (!overlaps(a, b)) {
    return std::nullopt;
  }
  return Box3D(std::max(a.x1(), b.x1()), std::max(a.y1(), b.y1()), std::max(a.z1(), b.z1()),
               std::min(a.x2(), b.x2()), std::min(a.y2(), b.y2()), std::min(a.z2(), b.z2()));
}

std::int64_t shared_volume(const Box3D& a, const Box3D& b) noexcept {
  const int dx = common_span(a.x1(), a.x2(), b.x1(), b.x2());
  const int dy = common_span(a.y1(), a.y2(), b.y1(), b.y2());
  const int dz = common_span(a.z1(), a.z2(), b.z1(), b.z2());
  if (dx <= 0 || dy <= 0 || dz <= 0) {
    return 0;
  }
  return static_cast<std::int64_t>(dx) * dy * dz;
}

BoxRelation relate(const Box3D& a, const Box3D& b) noexcept {
  const int dx = common_span(a.x1(), a.x2(), b.x1(), b.x2());
  const int dy = common_span(a.y1(), a.y2(), b.y1(), b.y2());
  const int dz = common_span(a.z1(), a.z2(), b.z1(), b.z2());
  if (dx < 0 || dy < 0 || dz < 0) {
    return BoxRelation::Disjoint;
  }
  if (a == b) {
    return BoxRelation::Equal;
  }
  if (dx == 0 || dy == 0 || dz == 0) {
    return BoxRelation::Touching;
  }
  if (within(a, b)) {
    return BoxRelation::Inside;
  }
  if (within(b, a)) {
    return BoxRelation::Contains;
  }
  return BoxRelation::Overlapping;
}

std::string_view to_string(BoxRelation relation) {
  switch (relation) {
    case BoxRelation::Disjoint: return "Disjoint";
    case BoxRelation::Touching: return "Touching";
    case BoxRelation::Overlapping: return "Overlapping";
    case BoxRelation::Equal: return "Equal";
    case BoxRelation::Inside: return "Inside";
    case BoxRelation::Contains: return "Contains";
  }
  return "Unknown";
}

}  // namespace factory::core
