#pragma once

#include <string>

#include "netsim/math.hpp"

namespace netsim {

enum class ControllerKind { Pid, Smc };

// Variants of the SMC control law.
//  - PaperEq8: the published law taken literally, including its printed
//    switching-term sign.
//  - Consistent: equivalent control re-derived from sdot = 0 on
//    s = -(edot + lambda e); no measured-acceleration feedback.
//  - Integral: measured-acceleration feedback (the applied thrust is part of
//    the measured acceleration, so the law integrates the switching term)
//    with the switching sign of the s-definition. Converges to the sliding
//    velocity edot = -lambda e with bounded ramp rate K per control step.
enum class SmcForm { PaperEq8, Consistent, Integral };

std::string to_string(ControllerKind k);
std::string to_string(SmcForm f);

struct ControlGains {
  ControllerKind kind = ControllerKind::Smc;
  double kp = 1e-2;      // N/m
  double ki = 1e-4;      // N/(m*s)
  double kd = 1e-3;      // N*s/m
  double lambda = 1e-2;  // 1/s, sliding-surface slope
  double k_sw = 3e-2;    // switching gain; N, or m/s^2 when mass-scaled
  double sigma = 1e-2;   // boundary-layer width
  SmcForm smc_form = SmcForm::Integral;
  // Multiplies the switching term by the satellite mass (PaperEq8 and
  // Consistent forms only; Integral always uses k_sw in newtons).
  bool smc_mass_scaled = false;
  // Integral form: per-step retention of the fed-back thrust. Values < 1
  // turn the accumulation into a lag with steady-state authority
  // k_sw * smc_leak / (1 - smc_leak), keeping a blocked squeeze gentle.
  double smc_leak = 0.99;
  double thrust_limit = 20.0;   // N
  double isp = 250.0;           // s
  double g0 = 9.80665;          // m/s^2
};

// Per-corner controller memory and propellant bookkeeping.
struct CornerControllerState {
  Vec3 integral;          // integral of e over time, m*s
  double initial_mass = 350.0;  // kg
  double mass = 350.0;          // kg, non-increasing
  double impulse = 0.0;         // accumulated |F| dt, N*s

  double fuel_used() const { return initial_mass - mass; }
};

// PID force of Eq-style gains; the caller owns the integral update.
inline Vec3 pid_force(const Vec3& e, const Vec3& e_dot, const Vec3& integral,
                      const ControlGains& g) {
  return e * g.kp + integral * g.ki + e_dot * g.kd;
}

// Sliding-mode control force. q_ddot is the measured corner acceleration
// (previous-step net force over mass), q_tar_ddot the finite-differenced
// target acceleration.
Vec3 smc_force(const Vec3& e, const Vec3& e_dot, const Vec3& q_ddot, const Vec3& q_tar_ddot,
               double mass, const ControlGains& g);

// Direction-preserving norm clamp.
inline Vec3 saturate(const Vec3& force, double limit) {
  const double n = norm(force);
  return n <= limit ? force : force * (limit / n);
}

// Tsiolkovsky propellant depletion: m = m0 - impulse / (Isp g0).
void update_satellite_mass(CornerControllerState& state, double applied_force_norm, double dt,
                           const ControlGains& g);

}  // namespace netsim
