#pragma once

#include "netsim/math.hpp"

namespace netsim::orbital {

// Circular reference orbit. r0 is informational; omega fully determines
// the relative dynamics.
struct OrbitParams {
  double omega = 0.0011;  // rad/s
  double r0_km = 7171.0;  // km, reporting only
};

// Relative state in the Hill frame: x radial, y along-track, z cross-track.
struct CwState {
  Vec3 pos;  // m
  Vec3 vel;  // m/s
};

// Hill-frame acceleration of a chaser at (pos, vel) relative to the frame
// origin: (3 w^2 x + 2 w vy, -2 w vx, -w^2 z).
inline Vec3 cw_acceleration(const Vec3& pos, const Vec3& vel, double omega) {
  return {3.0 * omega * omega * pos.x + 2.0 * omega * vel.y, -2.0 * omega * vel.x,
          -omega * omega * pos.z};
}

// Exact state-transition solution of the unforced equations at time t >= 0.
CwState cw_closed_form(const CwState& s0, double omega, double t);

}  // namespace netsim::orbital
