#include "netsim/geometry.hpp"

#include <algorithm>

namespace netsim {

SignedDistance box_signed_distance(const BoxPrimitive& box, const Vec3& point) {
  const Vec3 p = point - box.offset;
  const Vec3 a{std::abs(p.x), std::abs(p.y), std::abs(p.z)};
  const Vec3 q = a - box.half_extents;

  SignedDistance out;
  if (q.x > 0.0 || q.y > 0.0 || q.z > 0.0) {
    // Outside: distance to the nearest face/edge/corner.
    const Vec3 qp{std::max(q.x, 0.0), std::max(q.y, 0.0), std::max(q.z, 0.0)};
    out.distance = norm(qp);
    Vec3 n = qp / out.distance;
    n.x *= (p.x < 0.0 ? -1.0 : 1.0);
    n.y *= (p.y < 0.0 ? -1.0 : 1.0);
    n.z *= (p.z < 0.0 ? -1.0 : 1.0);
    out.normal = n;
  } else {
    // Inside: nearest face along the axis of least penetration.
    out.distance = std::max({q.x, q.y, q.z});
    if (q.x >= q.y && q.x >= q.z) {
      out.normal = {p.x < 0.0 ? -1.0 : 1.0, 0.0, 0.0};
    } else if (q.y >= q.z) {
      out.normal = {0.0, p.y < 0.0 ? -1.0 : 1.0, 0.0};
    } else {
      out.normal = {0.0, 0.0, p.z < 0.0 ? -1.0 : 1.0};
    }
  }
  return out;
}

SignedDistance signed_distance(const CompositeShape& shape, const Vec3& world_point,
                               const Vec3& body_position, const Quat& body_orientation) {
  const Vec3 local = body_orientation.rotate_inverse(world_point - body_position);

  SignedDistance best;
  bool first = true;
  for (const auto& prim : shape.primitives) {
    const SignedDistance sd = box_signed_distance(prim, local);
    if (first || sd.distance < best.distance) {
      best = sd;
      first = false;
    }
  }
  best.normal = body_orientation.rotate(best.normal);
  return best;
}

}  // namespace netsim
