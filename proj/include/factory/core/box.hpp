#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace factory::core {

// Axis-aligned box in integer millimetres. Corners are normalized on construction
// so that x1 <= x2, y1 <= y2 and z1 <= z2 always hold.
class Box3D {
 public:
  Box3D(int x1, int y1, int z1, int x2, int y2, int z2);

  // Builds the box from its left/front/bottom corner and its width/depth/height.
  // Throws NegativeExtent when any extent is negative.
  static Box3D from_anchor(int x, int y, int z, int width, int depth, int height);

  int x1() const noexcept { return x1_; }
  int y1() const noexcept { return y1_; }
  int z1() const noexcept { return z1_; }
  int x2() const noexcept { return x2_; }
  int y2() const noexcept { return y2_; }
  int z2() const noexcept { return z2_; }

  std::int64_t volume() const noexcept;

  friend bool operator==(const Box3D&, const Box3D&) = default;
  friend std::strong_ordering operator<=>(const Box3D&, const Box3D&) = default;

 private:
  int x1_, y1_, z1_, x2_, y2_, z2_;
};

// True iff the boxes share a region of positive volume. Face or edge contact is not overlap.
bool overlaps(const Box3D& a, const Box3D& b) noexcept;

// Common region when it has positive volume.
std::optional<Box3D> intersection(const Box3D& a, const Box3D& b);

std::int64_t shared_volume(const Box3D& a, const Box3D& b) noexcept;

// Qualitative relation between two boxes, in the spirit of region connection reasoning.
enum class BoxRelation {
  Disjoint,     // no common point
  Touching,     // common boundary, no common interior
  Overlapping,  // partial interior overlap
  Equal,
  Inside,       // first lies within second
  Contains,     // second lies within first
};

BoxRelation relate(const Box3D& a, const Box3D& b) noexcept;
std::string_view to_string(BoxRelation relation);

}  // namespace factory::core
