#include "netsim/guidance.hpp"

#include <cmath>

namespace netsim {

std::string to_string(GuidancePhase p) {
  switch (p) {
    case GuidancePhase::Orienting: return "orienting";
    case GuidancePhase::Approaching: return "approaching";
    case GuidancePhase::Capture: return "capture";
  }
  return "unknown";
}

PlaneFit fit_plane_pca(const std::array<Vec3, 4>& corners, const Vec3& target_center) {
  PlaneFit fit;
  fit.centroid = (corners[0] + corners[1] + corners[2] + corners[3]) * 0.25;

  Mat3 cov;
  for (const auto& c : corners) {
    const Vec3 d = c - fit.centroid;
    cov = cov + outer(d, d);
  }

  const SymEigen3 eig = sym_eigen3(cov);
  fit.normal = eig.vectors[0];

  // Collinear (or coincident) corners leave two near-zero eigenvalues and no
  // well-defined plane.
  const double scale = std::max(eig.values[2], 1e-30);
  if (eig.values[1] / scale < 1e-10) {
    fit.degenerate = true;
    fit.normal = normalized(target_center - fit.centroid);
    if (norm2(fit.normal) == 0.0) fit.normal = {1.0, 0.0, 0.0};
    return fit;
  }

  if (dot(fit.normal, target_center - fit.centroid) < 0.0) fit.normal = -fit.normal;
  return fit;
}

double leftover_angle(const Vec3& normal, const Vec3& net_centroid, const Vec3& target_center) {
  const Vec3 dir = normalized(target_center - net_centroid);
  const double c = std::abs(dot(normalized(normal), dir));
  return std::acos(std::min(1.0, std::max(0.0, c)));
}

namespace {

Vec3 saturate_norm(const Vec3& v, double limit) {
  const double n = norm(v);
  return n <= limit ? v : v * (limit / n);
}

// Deterministic orthonormal basis (u, v) spanning the plane normal to axis.
void plane_basis(const Vec3& axis, Vec3& u, Vec3& v) {
  const Vec3 helper = std::abs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  u = normalized(cross(axis, helper));
  v = cross(axis, u);
}

}  // namespace

double projected_area(const std::array<Vec3, 4>& corners, const Vec3& axis) {
  Vec3 u, v;
  plane_basis(axis, u, v);
  double area2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec3& p = corners[i];
    const Vec3& q = corners[(i + 1) % 4];
    const double pu = dot(p, u), pv = dot(p, v);
    const double qu = dot(q, u), qv = dot(q, v);
    area2 += pu * qv - qu * pv;
  }
  return 0.5 * std::abs(area2);
}

TargetSet orienting_targets(const NetState& net, const Vec3& target_center,
                            int* winding_state) {
  const auto corners = net.corner_positions();
  const Vec3 centroid = net.corner_centroid();
  Vec3 dir = normalized(target_center - centroid);
  if (norm2(dir) == 0.0) dir = {1.0, 0.0, 0.0};

  Vec3 u, v;
  plane_basis(dir, u, v);

  // Choose the in-plane rotation (and winding) of the stretched square that
  // stays closest to the current corner layout, so the net is not twisted.
  double cs[2] = {0.0, 0.0}, sn[2] = {0.0, 0.0};
  const double half_pi = 1.5707963267948966;
  for (int k = 0; k < 4; ++k) {
    const Vec3 p = corners[k] - centroid;
    const double pu = dot(p, u), pv = dot(p, v);
    const double r = std::sqrt(pu * pu + pv * pv);
    if (r < 1e-12) continue;
    const double theta = std::atan2(pv, pu);
    for (int w = 0; w < 2; ++w) {
      const double rel = theta - (w == 0 ? k : -k) * half_pi;
      cs[w] += r * std::cos(rel);
      sn[w] += r * std::sin(rel);
    }
  }
  // Hysteresis: keep the previous winding unless the other one fits clearly
  // better, so near-ties in a crumpled state cannot flip the targets between
  // mirrored squares from step to step.
  const double score0 = std::hypot(cs[0], sn[0]);
  const double score1 = std::hypot(cs[1], sn[1]);
  int winding = score0 >= score1 ? 0 : 1;
  if (winding_state && *winding_state >= 0) {
    const double keep = *winding_state == 0 ? score0 : score1;
    const double other = *winding_state == 0 ? score1 : score0;
    if (other <= 1.2 * keep) winding = *winding_state;
  }
  if (winding_state) *winding_state = winding;
  const double phi = std::atan2(winding == 0 ? sn[0] : sn[1], winding == 0 ? cs[0] : cs[1]);

  const double side = 0.5 * (net.rest_side_row() + net.rest_side_col());
  const double radius = side * 0.7071067811865476;  // side / sqrt(2)

  TargetSet out{};
  for (int k = 0; k < 4; ++k) {
    const double psi = phi + (winding == 0 ? k : -k) * half_pi;
    out.pos[k] = centroid + (u * std::cos(psi) + v * std::sin(psi)) * radius;
  }
  return out;
}

TargetSet approaching_targets(const NetState& net, const Vec3& target_center,
                              const GuidanceConfig& config, int* winding_state) {
  TargetSet out = orienting_targets(net, target_center, winding_state);
  const Vec3 shift = (target_center - net.corner_centroid()) * config.approach_scale;
  for (auto& p : out.pos) p += shift;
  return out;
}

TargetSet capture_targets(const NetState& net) {
  TargetSet out{};
  const Vec3 centroid = net.corner_centroid();
  for (auto& p : out.pos) p = centroid;
  return out;
}

bool Guidance::capture_condition(const NetState& net, const DebrisState& debris,
                                 int contact_count, const GuidanceConfig& config) {
  if (contact_count <= 0) return false;

  const auto corners = net.corner_positions();
  double max_dist = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) max_dist = std::max(max_dist, norm(corners[i] - corners[j]));
  if (max_dist > config.capture_corner_distance) return false;

  return norm(net.barycenter_velocity() - debris.lin_vel) <= config.capture_velocity_tol;
}

TargetSet Guidance::update(const NetState& net, const DebrisState& debris, int contact_count,
                           double /*t*/, double control_step) {
  const auto corners = net.corner_positions();
  const Vec3 target_center = debris.position;
  const PlaneFit fit = fit_plane_pca(corners, target_center);
  last_leftover_angle_ = leftover_angle(fit.normal, net.corner_centroid(), target_center);
  last_projected_area_ =
      projected_area(corners, normalized(target_center - net.corner_centroid()));

  const GuidancePhase before = phase_;
  switch (phase_) {
    case GuidancePhase::Orienting:
      if (last_leftover_angle_ <= config_.leftover_angle_threshold &&
          last_projected_area_ >= config_.area_fraction_threshold * net.stretched_area()) {
        phase_ = GuidancePhase::Approaching;
      }
      break;
    case GuidancePhase::Approaching:
      if (contact_count > 0) phase_ = GuidancePhase::Capture;
      break;
    case GuidancePhase::Capture:
      if (contact_count == 0) {
        if (++no_contact_count_ >= config_.no_contact_retry_steps) {
          phase_ = GuidancePhase::Orienting;
          no_contact_count_ = 0;
        }
      } else {
        no_contact_count_ = 0;
      }
      break;
  }
  if (phase_ != before) has_prev_ = false;  // restart target differentiation

  TargetSet targets;
  switch (phase_) {
    case GuidancePhase::Orienting:
      targets = orienting_targets(net, target_center, &winding_);
      break;
    case GuidancePhase::Approaching:
      targets = approaching_targets(net, target_center, config_, &winding_);
      break;
    case GuidancePhase::Capture: targets = capture_targets(net); break;
  }

  if (has_prev_ && control_step > 0.0) {
    const double inv = 1.0 / control_step;
    for (int k = 0; k < 4; ++k) {
      targets.vel[k] = (targets.pos[k] - prev_pos_[k]) * inv;
      targets.acc[k] = (targets.vel[k] - prev_vel_[k]) * inv;
      // Waypoints are synthetic; differencing them across jumps would ask
      // for kinematics far beyond the thrusters. Clamp to what a corner
      // satellite can physically follow.
      if (config_.target_vel_limit > 0.0)
        targets.vel[k] = saturate_norm(targets.vel[k], config_.target_vel_limit);
      if (config_.target_acc_limit > 0.0)
        targets.acc[k] = saturate_norm(targets.acc[k], config_.target_acc_limit);
    }
  }
  prev_pos_ = targets.pos;
  prev_vel_ = targets.vel;
  has_prev_ = true;
  return targets;
}

bool Guidance::update_capture(const NetState& net, const DebrisState& debris,
                              int contact_count) {
  if (capture_condition(net, debris, contact_count, config_)) {
    ++capture_hold_count_;
  } else {
    capture_hold_count_ = 0;
  }
  return capture_hold_count_ >= config_.capture_sustain_steps;
}

}  // namespace netsim
