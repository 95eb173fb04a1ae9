#include "netsim/orbital.hpp"

#include <cmath>

namespace netsim::orbital {

CwState cw_closed_form(const CwState& s0, double omega, double t) {
  const double w = omega;
  const double wt = w * t;
  const double c = std::cos(wt);
  const double s = std::sin(wt);

  const double x0 = s0.pos.x, y0 = s0.pos.y, z0 = s0.pos.z;
  const double vx0 = s0.vel.x, vy0 = s0.vel.y, vz0 = s0.vel.z;

  CwState out;
  out.pos.x = (4.0 - 3.0 * c) * x0 + (s / w) * vx0 + (2.0 / w) * (1.0 - c) * vy0;
  out.pos.y = 6.0 * (s - wt) * x0 + y0 - (2.0 / w) * (1.0 - c) * vx0 +
              ((4.0 * s - 3.0 * wt) / w) * vy0;
  out.pos.z = c * z0 + (s / w) * vz0;
  out.vel.x = 3.0 * w * s * x0 + c * vx0 + 2.0 * s * vy0;
  out.vel.y = -6.0 * w * (1.0 - c) * x0 - 2.0 * s * vx0 + (4.0 * c - 3.0) * vy0;
  out.vel.z = -w * s * z0 + c * vz0;
  return out;
}

}  // namespace netsim::orbital
