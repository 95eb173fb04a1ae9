#include "netsim/actuation.hpp"

#include <cmath>

namespace netsim {

std::string to_string(ControllerKind k) {
  return k == ControllerKind::Pid ? "pid" : "smc";
}

std::string to_string(SmcForm f) {
  switch (f) {
    case SmcForm::PaperEq8: return "paper";
    case SmcForm::Consistent: return "consistent";
    case SmcForm::Integral: return "integral";
  }
  return "unknown";
}

namespace {

inline Vec3 tanh3(const Vec3& v) { return {std::tanh(v.x), std::tanh(v.y), std::tanh(v.z)}; }

}  // namespace

Vec3 smc_force(const Vec3& e, const Vec3& e_dot, const Vec3& q_ddot, const Vec3& q_tar_ddot,
               double mass, const ControlGains& g) {
  const Vec3 surface = (e_dot + e * g.lambda) / g.sigma;  // -s / sigma
  const double k = g.smc_mass_scaled ? g.k_sw * mass : g.k_sw;

  switch (g.smc_form) {
    case SmcForm::PaperEq8:
      // F = m qdd - m qdd_tar - m lambda edot - K tanh((edot + lambda e)/sigma)
      return (q_ddot - q_tar_ddot - e_dot * g.lambda) * mass - tanh3(surface) * k;
    case SmcForm::Consistent:
      // Equivalent control from sdot = 0, switching term from Eqs. 5-6:
      // F = m qdd_tar + m lambda edot + K tanh((edot + lambda e)/sigma)
      return (q_tar_ddot + e_dot * g.lambda) * mass + tanh3(surface) * k;
    case SmcForm::Integral:
      // Measured-acceleration feedback: the applied thrust is part of
      // q_ddot, so the switching term accumulates until the state rides the
      // surface. No target-acceleration feedforward; differentiating
      // synthetic waypoints twice yields noise, and the accumulation already
      // supplies whatever steady force the target motion needs. The leak
      // bounds how hard a geometrically blocked goal can be pushed.
      return q_ddot * (mass * g.smc_leak) + tanh3(surface) * g.k_sw;
  }
  return {};
}

void update_satellite_mass(CornerControllerState& state, double applied_force_norm, double dt,
                           const ControlGains& g) {
  state.impulse += applied_force_norm * dt;
  state.mass = state.initial_mass - state.impulse / (g.isp * g.g0);
}

}  // namespace netsim
