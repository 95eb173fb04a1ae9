#include <doctest.h>

#include "netsim/dynamics.hpp"
#include "netsim/orbital.hpp"

using namespace netsim;
using namespace netsim::orbital;

namespace {

// Semi-implicit reference propagation with per-substep force refresh
// (position drift, then velocity kick; both orderings are standard and this
// one tracks the closed form best).
CwState propagate(CwState s, double omega, double dt, long steps) {
  for (long i = 0; i < steps; ++i) {
    s.pos += s.vel * dt;
    s.vel += cw_acceleration(s.pos, s.vel, omega) * dt;
  }
  return s;
}

}  // namespace

TEST_CASE("cw acceleration examples") {
  const double w = 0.0011;

  CHECK(norm(cw_acceleration({0, 0, 0}, {0, 0, 0}, w)) == 0.0);

  // Radial offset: xdd = 3 w^2 x, others zero.
  const Vec3 a1 = cw_acceleration({1000, 0, 0}, {0, 0, 0}, w);
  CHECK(a1.x == doctest::Approx(3.63e-3).epsilon(1e-12));
  CHECK(a1.y == 0.0);
  CHECK(a1.z == 0.0);

  // Cross-track offset: zdd = -w^2 z, decoupled.
  const Vec3 a2 = cw_acceleration({0, 0, 100}, {0, 0, 0}, w);
  CHECK(a2.z == doctest::Approx(-1.21e-4).epsilon(1e-12));
  CHECK(a2.x == 0.0);
  CHECK(a2.y == 0.0);

  // Coriolis coupling.
  const Vec3 a3 = cw_acceleration({0, 0, 0}, {0.5, -0.25, 0}, w);
  CHECK(a3.x == doctest::Approx(2.0 * w * -0.25));
  CHECK(a3.y == doctest::Approx(-2.0 * w * 0.5));
}

TEST_CASE("closed form identities") {
  const double w = 0.0011;
  const CwState s0{{30, -20, 50}, {0.05, -0.02, 0.01}};

  // t = 0 is the identity.
  const CwState at0 = cw_closed_form(s0, w, 0.0);
  CHECK(norm(at0.pos - s0.pos) < 1e-12);
  CHECK(norm(at0.vel - s0.vel) < 1e-12);

  // Pure z oscillation: z(t) = z0 cos + (vz0/w) sin.
  const CwState zs{{0, 0, 80}, {0, 0, 0.04}};
  for (double t : {100.0, 500.0, 1500.0}) {
    const CwState zt = cw_closed_form(zs, w, t);
    CHECK(zt.pos.x == 0.0);
    CHECK(zt.pos.y == 0.0);
    CHECK(zt.pos.z ==
          doctest::Approx(80 * std::cos(w * t) + 0.04 / w * std::sin(w * t)).epsilon(1e-12));
  }

  // Along-track displacement is an equilibrium.
  const CwState ys{{0, 123.0, 0}, {0, 0, 0}};
  const CwState yt = cw_closed_form(ys, w, 2000.0);
  CHECK(norm(yt.pos - ys.pos) < 1e-9);
  CHECK(norm(yt.vel) < 1e-12);
}

TEST_CASE("numeric propagation matches closed form to 1e-6 over 1000 s") {
  const double w = 0.0011, dt = 1e-3, T = 1000.0;
  const long steps = static_cast<long>(T / dt + 0.5);

  const CwState ics[] = {
      {{100, 0, 0}, {0, 0, 0}},      {{-100, 0, 0}, {0, 0, 0}},
      {{0, 100, 0}, {0, 0, 0}},      {{0, 0, 100}, {0, 0, 0}},
      {{57.7, 57.7, 57.7}, {0, 0, 0}}, {{-41.9, -59.4, -68.6}, {0, 0, 0}},
      {{100, -50, 30}, {0.1, -0.1, 0.05}}, {{100, 100, 100}, {0.1, 0.1, 0.1}},
  };
  for (const auto& ic : ics) {
    const CwState num = propagate(ic, w, dt, steps);
    const CwState exact = cw_closed_form(ic, w, T);
    const double scale = std::max({norm(exact.pos), norm(ic.pos), 1.0});
    CHECK(norm(num.pos - exact.pos) / scale < 1e-6);
  }
}

TEST_CASE("z dynamics stay decoupled") {
  const double w = 0.0011;
  CwState s{{80, -40, 0}, {0.05, 0.08, 0}};
  for (int i = 0; i < 200000; ++i) {
    s.pos += s.vel * 1e-3;
    s.vel += cw_acceleration(s.pos, s.vel, w) * 1e-3;
  }
  CHECK(std::abs(s.pos.z) < 1e-12);
  CHECK(std::abs(s.vel.z) < 1e-12);
}

TEST_CASE("orbital force on the net and debris") {
  const double w = 0.0011;
  SimConfig config;
  config.net.offset = {1000, 0, 0};
  Scene scene = init_scene(config);

  // 350 kg corner at x = 1000 m: F = m * 3 w^2 x = 1.2705 N. Corners sit at
  // the same x as the centroid (net plane is normal to x).
  const int corner = scene.net.corner_indices[0];
  const Vec3 f = cw_acceleration(scene.net.pos[corner], scene.net.vel[corner], w) *
                 scene.net.mass[corner];
  CHECK(f.x == doctest::Approx(1.2705).epsilon(1e-12));

  // Doubling the mass doubles the force.
  const Vec3 f2 = cw_acceleration(scene.net.pos[corner], scene.net.vel[corner], w) *
                  (2.0 * scene.net.mass[corner]);
  CHECK(f2.x == doctest::Approx(2.0 * f.x));

  // A body at the frame origin at rest feels nothing.
  CHECK(norm(cw_acceleration(scene.debris.position, scene.debris.lin_vel, w)) == 0.0);
}
