#pragma once

#include <array>

#include "netsim/state.hpp"

namespace netsim {

enum class GuidancePhase { Orienting, Approaching, Capture };

std::string to_string(GuidancePhase p);

struct GuidanceConfig {
  double leftover_angle_threshold = 36.0 * 3.14159265358979323846 / 180.0;  // rad
  double area_fraction_threshold = 0.8;
  double capture_corner_distance = 8.0;   // m, max pairwise
  double capture_velocity_tol = 0.1;      // m/s
  int capture_sustain_steps = 200;        // outer steps
  // Contact-free steps in Capture before a retry. Must outlast an elastic
  // rebound of the net (tens of seconds), not just a grazing touch.
  int no_contact_retry_steps = 500;       // outer steps (10 s)
  double approach_scale = 1.0;            // fraction of the centroid-to-target vector
  // Caps on finite-differenced target kinematics; <= 0 disables. The sliding
  // speeds the controllers command are lambda * error, well under 1 m/s, so
  // anything faster in a differenced waypoint is a fit artifact.
  double target_vel_limit = 1.0;    // m/s
  double target_acc_limit = 0.057;  // m/s^2, ~ thrust_limit / corner_mass
};

// Per-corner targets with finite-differenced kinematics.
struct TargetSet {
  std::array<Vec3, 4> pos;
  std::array<Vec3, 4> vel;
  std::array<Vec3, 4> acc;
};

struct PlaneFit {
  Vec3 normal;    // unit, oriented toward the target side
  Vec3 centroid;
  bool degenerate = false;  // collinear corners; normal fell back to target direction
};

// Smallest-eigenvalue direction of the corner covariance. The normal sign is
// chosen so normal . (target_center - centroid) >= 0.
PlaneFit fit_plane_pca(const std::array<Vec3, 4>& corners, const Vec3& target_center);

// Angle in [0, pi/2] between the normal line and the centroid-to-target
// direction.
double leftover_angle(const Vec3& normal, const Vec3& net_centroid, const Vec3& target_center);

// Shoelace area of the corner quad projected on the plane perpendicular to
// `axis` (unit). Corners must be in perimeter order.
double projected_area(const std::array<Vec3, 4>& corners, const Vec3& axis);

// winding_state (optional) carries the square's traversal direction between
// calls; with it the choice has hysteresis against frame-to-frame flips.
TargetSet orienting_targets(const NetState& net, const Vec3& target_center,
                            int* winding_state = nullptr);
TargetSet approaching_targets(const NetState& net, const Vec3& target_center,
                              const GuidanceConfig& config, int* winding_state = nullptr);
TargetSet capture_targets(const NetState& net);

// FSM + target generation with finite-difference target kinematics.
class Guidance {
 public:
  explicit Guidance(const GuidanceConfig& config) : config_(config) {}

  // Advances the state machine one control step and emits targets.
  TargetSet update(const NetState& net, const DebrisState& debris, int contact_count,
                   double t, double control_step);

  // Instantaneous capture condition and sustained counter. Returns true once
  // the condition has held for capture_sustain_steps consecutive steps.
  bool update_capture(const NetState& net, const DebrisState& debris, int contact_count);

  GuidancePhase phase() const { return phase_; }
  int capture_hold_count() const { return capture_hold_count_; }
  double last_leftover_angle() const { return last_leftover_angle_; }
  double last_projected_area() const { return last_projected_area_; }
  const GuidanceConfig& config() const { return config_; }

  static bool capture_condition(const NetState& net, const DebrisState& debris,
                                int contact_count, const GuidanceConfig& config);

 private:
  GuidanceConfig config_;
  GuidancePhase phase_ = GuidancePhase::Orienting;
  int no_contact_count_ = 0;
  int capture_hold_count_ = 0;
  int winding_ = -1;  // -1 until the first target fit
  double last_leftover_angle_ = 0.0;
  double last_projected_area_ = 0.0;
  bool has_prev_ = false;
  std::array<Vec3, 4> prev_pos_{};
  std::array<Vec3, 4> prev_vel_{};
};

}  // namespace netsim
