#pragma once

#include <array>
#include <vector>

#include "netsim/geometry.hpp"
#include "netsim/math.hpp"

namespace netsim {

// Point-mass net on a rows x cols grid. Corner indices are stored in
// perimeter order: (0,0), (0,cols-1), (rows-1,cols-1), (rows-1,0).
struct NetState {
  int rows = 0;
  int cols = 0;
  double rest_spacing = 0.0;  // m
  std::vector<Vec3> pos;      // m
  std::vector<Vec3> vel;      // m/s
  std::vector<double> mass;   // kg
  std::array<int, 4> corner_indices{0, 0, 0, 0};

  int node_count() const { return rows * cols; }
  int index(int r, int c) const { return r * cols + c; }

  bool is_corner(int i) const {
    return i == corner_indices[0] || i == corner_indices[1] || i == corner_indices[2] ||
           i == corner_indices[3];
  }

  double rest_side_row() const { return (rows - 1) * rest_spacing; }
  double rest_side_col() const { return (cols - 1) * rest_spacing; }

  // Area of the corner quad when the net is fully stretched flat.
  double stretched_area() const { return rest_side_row() * rest_side_col(); }

  std::array<Vec3, 4> corner_positions() const {
    return {pos[corner_indices[0]], pos[corner_indices[1]], pos[corner_indices[2]],
            pos[corner_indices[3]]};
  }
  std::array<Vec3, 4> corner_velocities() const {
    return {vel[corner_indices[0]], vel[corner_indices[1]], vel[corner_indices[2]],
            vel[corner_indices[3]]};
  }

  // Unweighted mean of the four corner positions (guidance reference point).
  Vec3 corner_centroid() const {
    const auto c = corner_positions();
    return (c[0] + c[1] + c[2] + c[3]) * 0.25;
  }

  // Mass-weighted barycenter velocity over all nodes.
  Vec3 barycenter_velocity() const {
    Vec3 p{};
    double m = 0.0;
    for (int i = 0; i < node_count(); ++i) {
      p += vel[i] * mass[i];
      m += mass[i];
    }
    return p / m;
  }

  double total_mass() const {
    double m = 0.0;
    for (double mi : mass) m += mi;
    return m;
  }

  Vec3 linear_momentum() const {
    Vec3 p{};
    for (int i = 0; i < node_count(); ++i) p += vel[i] * mass[i];
    return p;
  }
};

// Rigid debris body. Angular velocity is kept in the world frame; the
// inertia tensor is constant in the body frame.
struct DebrisState {
  Vec3 position;       // m, center of mass
  Quat orientation;    // body-to-world
  Vec3 lin_vel;        // m/s
  Vec3 ang_vel;        // rad/s, world frame
  double mass = 7821.0;
  Mat3 inertia_body = Mat3::identity();
  Mat3 inertia_body_inv = Mat3::identity();
  CompositeShape geometry = CompositeShape::envisat_like();

  Vec3 linear_momentum() const { return lin_vel * mass; }

  // Velocity of the body point currently at world position p.
  Vec3 point_velocity(const Vec3& p) const { return lin_vel + cross(ang_vel, p - position); }
};

// Per-step force accumulator. Cleared before each accumulation pass.
struct ForceBuffer {
  std::vector<Vec3> node_force;  // N
  Vec3 debris_force;             // N
  Vec3 debris_torque;            // N*m, about debris center of mass

  void resize(int nodes) { node_force.assign(nodes, Vec3{}); }

  void clear() {
    for (auto& f : node_force) f = Vec3{};
    debris_force = Vec3{};
    debris_torque = Vec3{};
  }

  Vec3 node_force_sum() const {
    Vec3 s{};
    for (const auto& f : node_force) s += f;
    return s;
  }
};

}  // namespace netsim
