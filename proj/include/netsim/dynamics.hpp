#pragma once

#include "netsim/config.hpp"
#include "netsim/state.hpp"

namespace netsim {

struct Scene {
  NetState net;
  DebrisState debris;
};

// Builds the initial scene: flat square net in a plane normal to +x, centered
// at net.offset from the debris, zero relative velocity; debris at the Hill
// frame origin. If any node would start closer to the debris than
// spawn_clearance, the whole net is pushed out along its offset direction
// until clear (the start direction is preserved).
Scene init_scene(const SimConfig& config);

// Uniform-density inertia of the composite about its center of mass; also
// returns the center-of-mass offset in the original body frame.
Mat3 composite_inertia(const CompositeShape& shape, double total_mass, Vec3* com_out = nullptr);

// Semi-implicit Euler node update: v += (F/m) dt, then x += v dt.
void integrate_nodes(NetState& net, const ForceBuffer& forces, double dt);

// Rigid-body update: semi-implicit linear part; angular velocity via Euler's
// equation with body-frame inertia; quaternion integrated and renormalized.
void integrate_debris(DebrisState& debris, const Vec3& force, const Vec3& torque, double dt);

// Throws DivergenceError when any position exceeds `limit` or any state
// component is non-finite.
void check_divergence(const NetState& net, const DebrisState& debris, double limit, long step);

}  // namespace netsim
