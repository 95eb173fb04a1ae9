#include "netsim/contact.hpp"

#include <cmath>

namespace netsim {

namespace {

// Penalty force on a point at `pos` moving with `vel` against a surface with
// outward normal `n`, penetration depth `pen` and surface velocity `surf_vel`.
Vec3 penalty_force(const Vec3& n, double pen, const Vec3& vel, const Vec3& surf_vel,
                   const ContactParams& params) {
  const Vec3 rel = vel - surf_vel;
  const double approach = dot(rel, n);  // negative when closing

  double fn = params.penalty_stiffness * pen - params.penalty_damping * approach;
  if (fn < 0.0) fn = 0.0;  // no adhesion

  Vec3 force = n * fn;

  const Vec3 tangential = rel - n * approach;
  const double tspeed = norm(tangential);
  if (tspeed > 1e-12 && params.friction_coeff > 0.0) {
    const double cap = params.friction_coeff * fn;
    const double scale = std::min(1.0, tspeed / params.friction_regularization_vel);
    force -= tangential * (cap * scale / tspeed);
  }
  return force;
}

}  // namespace

int net_debris_contact(const NetState& net, const DebrisState& debris,
                       const ContactParams& params, ForceBuffer& forces) {
  const double reach = debris.geometry.bounding_radius() + params.node_radius;
  const double reach2 = reach * reach;
  int count = 0;

  for (int i = 0; i < net.node_count(); ++i) {
    const Vec3& p = net.pos[i];
    if (norm2(p - debris.position) > reach2) continue;

    const SignedDistance sd = signed_distance(debris.geometry, p, debris.position,
                                              debris.orientation);
    if (sd.distance >= params.node_radius) continue;
    ++count;

    const double pen = params.node_radius - sd.distance;
    const Vec3 f = penalty_force(sd.normal, pen, net.vel[i], debris.point_velocity(p), params);
    forces.node_force[i] += f;
    forces.debris_force -= f;
    forces.debris_torque -= cross(p - debris.position, f);
  }
  return count;
}

int contact_count(const NetState& net, const DebrisState& debris, const ContactParams& params) {
  const double reach = debris.geometry.bounding_radius() + params.node_radius;
  const double reach2 = reach * reach;
  int count = 0;
  for (int i = 0; i < net.node_count(); ++i) {
    if (norm2(net.pos[i] - debris.position) > reach2) continue;
    const SignedDistance sd = signed_distance(debris.geometry, net.pos[i], debris.position,
                                              debris.orientation);
    if (sd.distance < params.node_radius) ++count;
  }
  return count;
}

SpatialHash::SpatialHash(const std::vector<Vec3>& points, double cell_size)
    : points_(points), cell_(cell_size) {
  cells_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3& p = points[i];
    cells_[key(cell_coord(p.x), cell_coord(p.y), cell_coord(p.z))].push_back(
        static_cast<int>(i));
  }
}

std::vector<std::pair<int, int>> SpatialHash::near_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  for_each_near_pair([&](int i, int j) { pairs.emplace_back(i, j); });
  return pairs;
}

bool grid_adjacent(const NetState& net, int i, int j) {
  const int ri = i / net.cols, ci = i % net.cols;
  const int rj = j / net.cols, cj = j % net.cols;
  return std::abs(ri - rj) <= 1 && std::abs(ci - cj) <= 1;
}

std::vector<std::pair<int, int>> self_contact_pairs(const NetState& net,
                                                    const ContactParams& params,
                                                    double margin) {
  std::vector<std::pair<int, int>> pairs;
  if (!params.self_contact_enabled) return pairs;
  const double reach = 2.0 * params.node_radius + margin;
  const SpatialHash hash(net.pos, reach);
  const double reach2 = reach * reach;
  hash.for_each_near_pair([&](int i, int j) {
    if (grid_adjacent(net, i, j)) return;
    if (norm2(net.pos[i] - net.pos[j]) < reach2) pairs.emplace_back(i, j);
  });
  return pairs;
}

void self_contact_forces(const NetState& net, const ContactParams& params,
                         const std::vector<std::pair<int, int>>& pairs, ForceBuffer& forces) {
  const double diameter = 2.0 * params.node_radius;
  for (const auto& [i, j] : pairs) {
    const Vec3 d = net.pos[i] - net.pos[j];
    const double dist = norm(d);
    if (dist >= diameter || dist < 1e-12) continue;

    const Vec3 n = d / dist;  // pushes i away from j
    const double pen = diameter - dist;
    const double approach = dot(net.vel[i] - net.vel[j], n);
    double fn = params.penalty_stiffness * pen - params.penalty_damping * approach;
    if (fn < 0.0) fn = 0.0;
    const Vec3 f = n * fn;
    forces.node_force[i] += f;
    forces.node_force[j] -= f;
  }
}

void self_contact(const NetState& net, const ContactParams& params, ForceBuffer& forces) {
  if (!params.self_contact_enabled) return;
  self_contact_forces(net, params, self_contact_pairs(net, params, 0.0), forces);
}

}  // namespace netsim
