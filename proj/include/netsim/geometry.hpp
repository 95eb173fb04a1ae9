#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "netsim/math.hpp"

namespace netsim {

// Axis-aligned box primitive expressed in the debris body frame.
struct BoxPrimitive {
  Vec3 half_extents{1.0, 1.0, 1.0};  // m
  Vec3 offset{0.0, 0.0, 0.0};        // center in body frame, m
};

// Union of boxes. Signed distance is the minimum over primitives
// (ties go to the earlier primitive in the list).
struct CompositeShape {
  std::vector<BoxPrimitive> primitives;

  // Main body 10x4x4 m plus a 14x5x0.1 m panel attached along one side.
  static CompositeShape envisat_like() {
    CompositeShape s;
    s.primitives.push_back({{5.0, 2.0, 2.0}, {0.0, 0.0, 0.0}});
    s.primitives.push_back({{2.5, 7.0, 0.05}, {0.0, 9.0, 0.0}});
    return s;
  }

  // Largest |corner coordinate| reachable by any primitive, in body frame.
  double bounding_radius() const {
    double r = 0.0;
    for (const auto& p : primitives) {
      const Vec3 c{std::abs(p.offset.x) + p.half_extents.x,
                   std::abs(p.offset.y) + p.half_extents.y,
                   std::abs(p.offset.z) + p.half_extents.z};
      r = std::max(r, norm(c));
    }
    return r;
  }
};

struct SignedDistance {
  double distance = 0.0;  // m, negative inside
  Vec3 normal;            // outward unit normal
};

// Signed distance and outward normal of `point` (body frame) to one box.
SignedDistance box_signed_distance(const BoxPrimitive& box, const Vec3& point);

// Minimum signed distance over the composite for a world-space point given
// the debris pose. Normal is rotated back to world frame.
SignedDistance signed_distance(const CompositeShape& shape, const Vec3& world_point,
                               const Vec3& body_position, const Quat& body_orientation);

}  // namespace netsim
