#include "netsim/dynamics.hpp"

#include <cmath>

#include "netsim/errors.hpp"

namespace netsim {

void SimConfig::validate() const {
  if (net.rows < 2 || net.cols < 2) throw ConfigError("net.rows", "grid must be at least 2x2");
  if (net.side_length <= 0.0) throw ConfigError("net.side_length", "must be > 0");
  if (net.node_mass <= 0.0) throw ConfigError("net.node_mass", "must be > 0");
  if (net.corner_mass <= 0.0) throw ConfigError("net.corner_mass", "must be > 0");
  if (net.corner_mass < net.node_mass)
    throw ConfigError("net.corner_mass", "corner mass must be >= node mass");
  if (debris.mass <= 0.0) throw ConfigError("debris.mass", "must be > 0");
  if (debris.geometry.primitives.empty())
    throw ConfigError("debris.geometry", "needs at least one primitive");
  for (const auto& p : debris.geometry.primitives) {
    if (p.half_extents.x <= 0.0 || p.half_extents.y <= 0.0 || p.half_extents.z <= 0.0)
      throw ConfigError("debris.geometry", "half extents must be > 0");
  }
  if (elastic.young_modulus <= 0.0) throw ConfigError("elastic.young_modulus", "must be > 0");
  if (elastic.poisson_ratio < 0.0 || elastic.poisson_ratio >= 0.5)
    throw ConfigError("elastic.poisson_ratio", "must be in [0, 0.5)");
  if (elastic.damping < 0.0) throw ConfigError("elastic.damping", "must be >= 0");
  if (elastic.constraint_iterations < 1)
    throw ConfigError("elastic.constraint_iterations", "must be >= 1");
  if (contact.penalty_stiffness <= 0.0)
    throw ConfigError("contact.penalty_stiffness", "must be > 0");
  if (contact.penalty_damping < 0.0) throw ConfigError("contact.penalty_damping", "must be >= 0");
  if (contact.friction_coeff < 0.0) throw ConfigError("contact.friction_coeff", "must be >= 0");
  if (contact.node_radius <= 0.0) throw ConfigError("contact.node_radius", "must be > 0");
  if (orbit.omega <= 0.0) throw ConfigError("orbit.omega", "must be > 0");
  if (gains.thrust_limit <= 0.0) throw ConfigError("gains.thrust_limit", "must be > 0");
  if (gains.isp <= 0.0) throw ConfigError("gains.isp", "must be > 0");
  if (gains.kp < 0.0 || gains.ki < 0.0 || gains.kd < 0.0 || gains.lambda < 0.0 ||
      gains.k_sw < 0.0 || gains.sigma <= 0.0)
    throw ConfigError("gains", "gains must be >= 0 and sigma > 0");
  if (gains.smc_leak < 0.0 || gains.smc_leak > 1.0)
    throw ConfigError("gains.smc_leak", "must be in [0, 1]");
  if (guidance.leftover_angle_threshold <= 0.0)
    throw ConfigError("guidance.leftover_angle_deg", "must be > 0");
  if (guidance.area_fraction_threshold <= 0.0 || guidance.area_fraction_threshold > 1.0)
    throw ConfigError("guidance.area_fraction", "must be in (0, 1]");
  if (guidance.capture_corner_distance <= 0.0)
    throw ConfigError("guidance.capture_corner_distance", "must be > 0");
  if (guidance.capture_velocity_tol <= 0.0)
    throw ConfigError("guidance.capture_velocity_tol", "must be > 0");
  if (guidance.capture_sustain_steps < 1)
    throw ConfigError("guidance.capture_sustain_steps", "must be >= 1");
  if (guidance.no_contact_retry_steps < 1)
    throw ConfigError("guidance.no_contact_retry_steps", "must be >= 1");
  if (control_step <= 0.0) throw ConfigError("sim.control_step", "must be > 0");
  if (substeps < 1) throw ConfigError("sim.substeps", "must be >= 1");
  if (timeout <= 0.0) throw ConfigError("sim.timeout", "must be > 0");
  if (fuel_floor_mass < 0.0 || fuel_floor_mass >= net.corner_mass)
    throw ConfigError("sim.fuel_floor_mass", "must be in [0, corner_mass)");
}

Mat3 composite_inertia(const CompositeShape& shape, double total_mass, Vec3* com_out) {
  double volume = 0.0;
  Vec3 com{};
  for (const auto& p : shape.primitives) {
    const double v = 8.0 * p.half_extents.x * p.half_extents.y * p.half_extents.z;
    volume += v;
    com += p.offset * v;
  }
  com = com / volume;
  if (com_out) *com_out = com;

  const double density = total_mass / volume;
  Mat3 inertia;
  for (const auto& p : shape.primitives) {
    const double v = 8.0 * p.half_extents.x * p.half_extents.y * p.half_extents.z;
    const double m = density * v;
    const double a = 2.0 * p.half_extents.x, b = 2.0 * p.half_extents.y,
                 c = 2.0 * p.half_extents.z;
    Mat3 box = Mat3::diagonal(m / 12.0 * (b * b + c * c), m / 12.0 * (a * a + c * c),
                              m / 12.0 * (a * a + b * b));
    // Parallel axis about the composite center of mass.
    const Vec3 d = p.offset - com;
    const Mat3 shift = (Mat3::identity() * norm2(d) + outer(d, d) * -1.0) * m;
    inertia = inertia + box + shift;
  }
  return inertia;
}

Scene init_scene(const SimConfig& config) {
  config.validate();

  Scene scene;
  DebrisState& debris = scene.debris;
  debris.mass = config.debris.mass;
  debris.geometry = config.debris.geometry;

  // Work in a body frame anchored at the composite center of mass.
  Vec3 com;
  debris.inertia_body = composite_inertia(debris.geometry, debris.mass, &com);
  debris.inertia_body_inv = inverse(debris.inertia_body);
  for (auto& p : debris.geometry.primitives) p.offset -= com;

  debris.position = Vec3{};
  debris.orientation = Quat{};
  debris.lin_vel = config.debris.initial_velocity;
  debris.ang_vel = config.debris.initial_angular_velocity;

  NetState& net = scene.net;
  net.rows = config.net.rows;
  net.cols = config.net.cols;
  net.rest_spacing = config.net.spacing();
  const int n = net.rows * net.cols;
  net.pos.resize(n);
  net.vel.assign(n, config.net.relative_velocity + debris.lin_vel);
  net.mass.assign(n, config.net.node_mass);
  net.corner_indices = {net.index(0, 0), net.index(0, net.cols - 1),
                        net.index(net.rows - 1, net.cols - 1), net.index(net.rows - 1, 0)};
  for (int i : net.corner_indices) net.mass[i] = config.net.corner_mass;

  // Flat grid in the y-z plane (normal +x), centered on the offset point.
  const double s = net.rest_spacing;
  const double cy = 0.5 * (net.cols - 1), cz = 0.5 * (net.rows - 1);
  auto place = [&](const Vec3& center) {
    for (int r = 0; r < net.rows; ++r)
      for (int c = 0; c < net.cols; ++c)
        net.pos[net.index(r, c)] = center + Vec3{0.0, (c - cy) * s, (r - cz) * s};
  };
  place(debris.position + config.net.offset);

  // A start point on the sampling sphere can leave the net plane slicing the
  // debris geometry. Clear it by shifting the whole net along one of three
  // candidate directions (the start direction, or the net normal either
  // way), choosing the placement closest to the sampled point. Shifting only
  // along the start direction is unbounded for starts in the panel plane.
  const double required = config.contact.node_radius + config.net.spawn_clearance;
  auto min_signed_distance = [&]() {
    double min_sd = 1e300;
    for (const auto& p : net.pos) {
      min_sd = std::min(
          min_sd,
          signed_distance(debris.geometry, p, debris.position, debris.orientation).distance);
    }
    return min_sd;
  };

  if (min_signed_distance() < required) {
    Vec3 radial = normalized(config.net.offset);
    if (norm2(radial) == 0.0) radial = {1.0, 0.0, 0.0};
    const Vec3 candidates[3] = {radial, {1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};

    double best_extra = 1e300;
    Vec3 best_dir = radial;
    for (const Vec3& dir : candidates) {
      double extra = 0.0;
      bool cleared = false;
      for (int attempt = 0; attempt < 600; ++attempt) {
        place(debris.position + config.net.offset + dir * extra);
        const double min_sd = min_signed_distance();
        if (min_sd >= required) {
          cleared = true;
          break;
        }
        extra += std::max(required - min_sd, 0.1);
      }
      if (cleared && extra < best_extra) {
        best_extra = extra;
        best_dir = dir;
      }
    }
    place(debris.position + config.net.offset + best_dir * best_extra);
  }

  return scene;
}

void integrate_nodes(NetState& net, const ForceBuffer& forces, double dt) {
  for (int i = 0; i < net.node_count(); ++i) {
    net.vel[i] += forces.node_force[i] * (dt / net.mass[i]);
    net.pos[i] += net.vel[i] * dt;
  }
}

void integrate_debris(DebrisState& debris, const Vec3& force, const Vec3& torque, double dt) {
  debris.lin_vel += force * (dt / debris.mass);
  debris.position += debris.lin_vel * dt;

  // Euler's equation in the body frame: I wdot = tau - w x (I w).
  const Vec3 w_body = debris.orientation.rotate_inverse(debris.ang_vel);
  const Vec3 tau_body = debris.orientation.rotate_inverse(torque);
  const Vec3 iw = debris.inertia_body * w_body;
  const Vec3 wdot = debris.inertia_body_inv * (tau_body - cross(w_body, iw));
  const Vec3 w_new = w_body + wdot * dt;
  debris.ang_vel = debris.orientation.rotate(w_new);

  debris.orientation = integrate_orientation(debris.orientation, debris.ang_vel, dt);
}

void check_divergence(const NetState& net, const DebrisState& debris, double limit, long step) {
  for (int i = 0; i < net.node_count(); ++i) {
    const Vec3& p = net.pos[i];
    if (!is_finite(p) || !is_finite(net.vel[i]))
      throw DivergenceError(step, "non-finite net node state");
    if (std::abs(p.x) > limit || std::abs(p.y) > limit || std::abs(p.z) > limit)
      throw DivergenceError(step, "net node position out of bounds");
  }
  if (!is_finite(debris.position) || !is_finite(debris.lin_vel) || !is_finite(debris.ang_vel) ||
      !std::isfinite(debris.orientation.norm()))
    throw DivergenceError(step, "non-finite debris state");
  if (std::abs(debris.position.x) > limit || std::abs(debris.position.y) > limit ||
      std::abs(debris.position.z) > limit)
    throw DivergenceError(step, "debris position out of bounds");
}

}  // namespace netsim
