#include "netsim/sim.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "netsim/contact.hpp"
#include "netsim/errors.hpp"
#include "netsim/net_models.hpp"

namespace netsim {

std::string to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::Running: return "running";
    case TerminationReason::Captured: return "captured";
    case TerminationReason::Timeout: return "timeout";
    case TerminationReason::Diverged: return "diverged";
    case TerminationReason::FuelExhausted: return "fuel_exhausted";
  }
  return "unknown";
}

Simulation::Simulation(const SimConfig& config)
    : config_(config), guidance_(config.guidance) {
  Scene scene = init_scene(config_);
  net_ = std::move(scene.net);
  debris_ = std::move(scene.debris);
  topo_ = NetTopology::build(net_);

  for (int k = 0; k < 4; ++k) {
    controllers_[k].initial_mass = config_.net.corner_mass;
    controllers_[k].mass = config_.net.corner_mass;
  }
  forces_.resize(net_.node_count());
  internal_.resize(net_.node_count());
  held_.assign(net_.node_count(), Vec3{});
}

void Simulation::apply_termination(TerminationReason reason) {
  metrics_.reason = reason;
  metrics_.captured = (reason == TerminationReason::Captured);
  metrics_.duration = t_;
  metrics_.steps = step_;
  metrics_.fuel_total = 0.0;
  for (int k = 0; k < 4; ++k) {
    metrics_.fuel_per_satellite[k] = controllers_[k].fuel_used();
    metrics_.fuel_total += metrics_.fuel_per_satellite[k];
  }
}

bool Simulation::step() {
  if (metrics_.reason != TerminationReason::Running) return false;

  const double dt_ctrl = config_.control_step;
  const double dt = config_.substep_dt();

  // High-level guidance, then per-corner low-level control from the state at
  // the start of the outer step.
  const TargetSet targets = guidance_.update(net_, debris_, contact_count_, t_, dt_ctrl);

  // All-zero gains mean an unactuated net (the SMC feedforward terms are
  // part of the controller, so they switch off with it).
  const bool actuated =
      config_.gains.kind == ControllerKind::Pid
          ? (config_.gains.kp != 0.0 || config_.gains.ki != 0.0 || config_.gains.kd != 0.0)
          : (config_.gains.lambda != 0.0 || config_.gains.k_sw != 0.0);

  for (int k = 0; k < 4; ++k) {
    const int i = net_.corner_indices[k];
    const Vec3 e = targets.pos[k] - net_.pos[i];
    const Vec3 e_dot = targets.vel[k] - net_.vel[i];

    if (!actuated) {
      thrust_[k] = Vec3{};
      continue;
    }
    Vec3 f;
    if (config_.gains.kind == ControllerKind::Pid) {
      f = pid_force(e, e_dot, controllers_[k].integral, config_.gains);
    } else {
      // PaperEq8 reads the corner's full measured acceleration; the Integral
      // form feeds back only the acceleration the thruster itself produced,
      // which keeps external forces out of the accumulation loop.
      const Vec3 q_ddot = config_.gains.smc_form == SmcForm::Integral
                              ? thrust_[k] / controllers_[k].mass
                              : corner_accel_[k];
      f = smc_force(e, e_dot, q_ddot, targets.acc[k], controllers_[k].mass, config_.gains);
    }
    const Vec3 f_sat = saturate(f, config_.gains.thrust_limit);
    if (config_.gains.kind == ControllerKind::Pid) {
      // Anti-windup: freeze the integral while the saturator is active.
      if (norm(f) <= config_.gains.thrust_limit) {
        controllers_[k].integral += e * dt_ctrl;
      }
    }
    thrust_[k] = f_sat;
  }

  // Orbital forces for every mass, zero-order held over the outer step.
  // The Hill frame origin is the debris's initial nominal position (origin).
  const double omega = config_.orbit.omega;
  for (int i = 0; i < net_.node_count(); ++i) {
    held_[i] = orbital::cw_acceleration(net_.pos[i], net_.vel[i], omega) * net_.mass[i];
  }
  for (int k = 0; k < 4; ++k) held_[net_.corner_indices[k]] += thrust_[k];
  debris_held_ = orbital::cw_acceleration(debris_.position, debris_.lin_vel, omega) *
                 debris_.mass;

  // Inner physics substeps with held external forces. The self-contact
  // broad phase is rebuilt once per control step with a motion margin; the
  // narrow phase below re-checks true distances every substep.
  const bool project = (config_.model == NetModelKind::InextensibleEdges);
  const auto contact_pairs = self_contact_pairs(net_, config_.contact, 0.2);
  for (int s = 0; s < config_.substeps; ++s) {
    forces_.clear();
    for (int i = 0; i < net_.node_count(); ++i) forces_.node_force[i] = held_[i];
    forces_.debris_force = debris_held_;

    internal_.clear();
    internal_forces(net_, topo_, config_.model, config_.elastic, internal_);
    for (int i = 0; i < net_.node_count(); ++i) forces_.node_force[i] += internal_.node_force[i];

    contact_count_ = net_debris_contact(net_, debris_, config_.contact, forces_);
    self_contact_forces(net_, config_.contact, contact_pairs, forces_);

    if (s + 1 == config_.substeps) {
      // Measured corner acceleration feeds the Eq-8 style controller.
      for (int k = 0; k < 4; ++k) {
        const int i = net_.corner_indices[k];
        corner_accel_[k] = forces_.node_force[i] / net_.mass[i];
      }
    }

    integrate_nodes(net_, forces_, dt);
    if (project) project_inextensible(net_, topo_, config_.elastic.constraint_iterations, dt);
    integrate_debris(debris_, forces_.debris_force, forces_.debris_torque, dt);
  }

  // Propellant accounting once per outer step (Tsiolkovsky).
  bool fuel_out = false;
  for (int k = 0; k < 4; ++k) {
    update_satellite_mass(controllers_[k], norm(thrust_[k]), dt_ctrl, config_.gains);
    net_.mass[net_.corner_indices[k]] = controllers_[k].mass;
    if (controllers_[k].mass <= config_.fuel_floor_mass) fuel_out = true;
  }

  t_ += dt_ctrl;
  ++step_;

  try {
    check_divergence(net_, debris_, config_.divergence_limit, step_);
  } catch (const DivergenceError&) {
    apply_termination(TerminationReason::Diverged);
    return false;
  }

  collect_metrics(targets);

  const bool captured = guidance_.update_capture(net_, debris_, contact_count_);
  if (captured) {
    metrics_.contact_points_at_capture = contact_count_;
    metrics_.capture_time = t_;
    apply_termination(TerminationReason::Captured);
    return false;
  }
  if (fuel_out) {
    apply_termination(TerminationReason::FuelExhausted);
    return false;
  }
  if (t_ >= config_.timeout - 0.5 * dt_ctrl) {
    apply_termination(TerminationReason::Timeout);
    return false;
  }
  return true;
}

void Simulation::collect_metrics(const TargetSet& targets) {
  (void)targets;

  double max_internal = 0.0;
  for (int i = 0; i < net_.node_count(); ++i) {
    const double fi = norm(internal_.node_force[i]);
    max_internal = std::max(max_internal, fi);
    metrics_.internal_force_hist.add(fi);
    metrics_.velocity_hist.add(norm(net_.vel[i]));
    metrics_.acceleration_hist.add(norm(forces_.node_force[i]) / net_.mass[i]);
  }
  metrics_.max_internal_force = std::max(metrics_.max_internal_force, max_internal);

  for (int k = 0; k < 4; ++k) {
    const double tn = norm(thrust_[k]);
    metrics_.max_thrust = std::max(metrics_.max_thrust, tn);
    metrics_.thrust_hist.add(tn);
  }

  metrics_.max_edge_strain = std::max(metrics_.max_edge_strain, max_edge_strain(net_, topo_));

  if (!metrics_.had_contact && contact_count_ > 0) {
    metrics_.had_contact = true;
    const Vec3 axis = normalized(debris_.position - net_.corner_centroid());
    metrics_.effective_area_at_first_contact =
        projected_area(net_.corner_positions(), norm2(axis) > 0.0 ? axis : Vec3{1, 0, 0});
  }

  if (config_.log_trajectory) {
    StepRecord rec;
    rec.t = t_;
    rec.phase = guidance_.phase();
    rec.corner_pos = net_.corner_positions();
    rec.corner_vel = net_.corner_velocities();
    rec.thrust = thrust_;
    rec.debris_pos = debris_.position;
    rec.debris_vel = debris_.lin_vel;
    rec.debris_ang_vel = debris_.ang_vel;
    rec.debris_orientation = debris_.orientation;
    rec.contact_count = contact_count_;
    rec.leftover_angle = guidance_.last_leftover_angle();
    rec.projected_area = guidance_.last_projected_area();
    for (int k = 0; k < 4; ++k) rec.satellite_mass[k] = controllers_[k].mass;
    rec.max_internal_force = max_internal;
    record_.push_back(rec);
  }
}

const EpisodeMetrics& Simulation::run() {
  while (step()) {
  }
  return metrics_;
}

EpisodeMetrics run_episode(const SimConfig& config, EpisodeRecord* record) {
  Simulation sim(config);
  sim.run();
  if (record) *record = sim.record();
  return sim.metrics();
}

void write_record_csv(const std::string& path, const EpisodeRecord& record) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");

  out << "t,phase";
  for (int k = 0; k < 4; ++k)
    out << ",c" << k << "_px,c" << k << "_py,c" << k << "_pz";
  for (int k = 0; k < 4; ++k)
    out << ",c" << k << "_vx,c" << k << "_vy,c" << k << "_vz";
  for (int k = 0; k < 4; ++k)
    out << ",thr" << k << "_x,thr" << k << "_y,thr" << k << "_z";
  out << ",deb_px,deb_py,deb_pz,deb_qw,deb_qx,deb_qy,deb_qz,deb_vx,deb_vy,deb_vz"
      << ",deb_wx,deb_wy,deb_wz,contact_count,leftover_angle_rad,projected_area_m2"
      << ",mass0,mass1,mass2,mass3,max_internal_force_n\n";

  char buf[32];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    out << ',' << buf;
  };
  for (const auto& r : record) {
    std::snprintf(buf, sizeof(buf), "%.9g", r.t);
    out << buf << ',' << to_string(r.phase);
    for (const auto& p : r.corner_pos) { num(p.x); num(p.y); num(p.z); }
    for (const auto& v : r.corner_vel) { num(v.x); num(v.y); num(v.z); }
    for (const auto& f : r.thrust) { num(f.x); num(f.y); num(f.z); }
    num(r.debris_pos.x); num(r.debris_pos.y); num(r.debris_pos.z);
    num(r.debris_orientation.w); num(r.debris_orientation.x);
    num(r.debris_orientation.y); num(r.debris_orientation.z);
    num(r.debris_vel.x); num(r.debris_vel.y); num(r.debris_vel.z);
    num(r.debris_ang_vel.x); num(r.debris_ang_vel.y); num(r.debris_ang_vel.z);
    out << ',' << r.contact_count;
    num(r.leftover_angle);
    num(r.projected_area);
    for (double m : r.satellite_mass) num(m);
    num(r.max_internal_force);
    out << '\n';
  }
}

}  // namespace netsim
