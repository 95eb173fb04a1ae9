#include <doctest.h>

#include <algorithm>
#include <set>

#include "netsim/contact.hpp"
#include "netsim/dynamics.hpp"
#include "oracles.hpp"

using namespace netsim;

namespace {

DebrisState unit_box_debris() {
  DebrisState d;
  d.geometry.primitives = {{{1, 1, 1}, {0, 0, 0}}};
  d.inertia_body = Mat3::identity();
  d.inertia_body_inv = Mat3::identity();
  return d;
}

NetState single_node(const Vec3& pos, const Vec3& vel = {}) {
  NetState net;
  net.rows = 1;
  net.cols = 1;
  net.rest_spacing = 1.0;
  net.pos = {pos};
  net.vel = {vel};
  net.mass = {0.1};
  net.corner_indices = {0, 0, 0, 0};
  return net;
}

}  // namespace

TEST_CASE("box signed distance") {
  const DebrisState d = unit_box_debris();

  SUBCASE("outside a face") {
    const auto sd = signed_distance(d.geometry, {2, 0, 0}, d.position, d.orientation);
    CHECK(sd.distance == doctest::Approx(1.0));
    CHECK(norm(sd.normal - Vec3{1, 0, 0}) < 1e-12);
  }
  SUBCASE("at the center the depth is the smallest half extent") {
    const auto sd = signed_distance(d.geometry, {0, 0, 0}, d.position, d.orientation);
    CHECK(sd.distance == doctest::Approx(-1.0));
  }
  SUBCASE("outside a corner measures the diagonal") {
    const auto sd = signed_distance(d.geometry, {2, 2, 2}, d.position, d.orientation);
    CHECK(sd.distance == doctest::Approx(std::sqrt(3.0)));
    CHECK(norm(sd.normal - normalized(Vec3{1, 1, 1})) < 1e-12);
  }
  SUBCASE("pose rotation carries the normal") {
    DebrisState rotated = d;
    rotated.orientation = Quat::from_axis_angle({0, 0, 1}, M_PI / 2.0);
    rotated.position = {5, 0, 0};
    const auto sd =
        signed_distance(rotated.geometry, {8, 0, 0}, rotated.position, rotated.orientation);
    CHECK(sd.distance == doctest::Approx(2.0));
    CHECK(norm(sd.normal - Vec3{1, 0, 0}) < 1e-9);
  }
  SUBCASE("two primitives: the nearer one wins, ties go to the first") {
    CompositeShape shape;
    shape.primitives = {{{1, 1, 1}, {0, 0, 0}}, {{1, 1, 1}, {4, 0, 0}}};
    const auto closer_second = box_signed_distance(shape.primitives[1], {3.5, 0, 0});
    CHECK(closer_second.distance < 0.0);
    const auto sd = signed_distance(shape, {3.5, 0, 0}, {0, 0, 0}, Quat{});
    CHECK(sd.distance == doctest::Approx(closer_second.distance));

    // Exactly equidistant point between the two boxes.
    const auto tie = signed_distance(shape, {2.0, 0, 0}, {0, 0, 0}, Quat{});
    const auto first = box_signed_distance(shape.primitives[0], {2.0, 0, 0});
    CHECK(tie.distance == doctest::Approx(1.0));
    CHECK(norm(tie.normal - first.normal) < 1e-12);  // first primitive's normal
  }
}

TEST_CASE("envisat composite has a thin panel on one side") {
  const CompositeShape shape = CompositeShape::envisat_like();
  REQUIRE(shape.primitives.size() == 2);
  // A point inside the panel span but off the body reports panel contact.
  const auto sd = signed_distance(shape, {0, 9, 1.0}, {0, 0, 0}, Quat{});
  CHECK(sd.distance == doctest::Approx(0.95));
}

TEST_CASE("static penetration produces the penalty force on both bodies") {
  const DebrisState debris = unit_box_debris();
  ContactParams params;
  params.friction_coeff = 0.0;

  // Node radius 0.05, node sitting 0.02 outside the +x face: penetration 0.03.
  NetState net = single_node({1.02, 0, 0});
  ForceBuffer forces;
  forces.resize(1);
  const int count = net_debris_contact(net, debris, params, forces);

  CHECK(count == 1);
  CHECK(forces.node_force[0].x == doctest::Approx(1e4 * 0.03));
  CHECK(norm(forces.node_force[0] + forces.debris_force) < 1e-10);
}

TEST_CASE("no adhesion when separating fast") {
  const DebrisState debris = unit_box_debris();
  ContactParams params;
  params.friction_coeff = 0.0;

  // Penetration 0.03 -> stiffness term 300 N; separating at 10 m/s ->
  // damping term -500 N; the clamp keeps the normal force at zero.
  NetState net = single_node({1.02, 0, 0}, {10, 0, 0});
  ForceBuffer forces;
  forces.resize(1);
  const int count = net_debris_contact(net, debris, params, forces);

  CHECK(count == 1);  // still counted as a contact
  CHECK(norm(forces.node_force[0]) == 0.0);
  CHECK(norm(forces.debris_force) == 0.0);
}

TEST_CASE("friction opposes sliding and respects the cone") {
  const DebrisState debris = unit_box_debris();
  ContactParams params;

  NetState net = single_node({1.02, 0, 0}, {0, 0.5, 0});  // sliding in +y
  ForceBuffer forces;
  forces.resize(1);
  net_debris_contact(net, debris, params, forces);

  const Vec3 n{1, 0, 0};
  const double fn = dot(forces.node_force[0], n);
  const Vec3 ft = forces.node_force[0] - n * fn;
  CHECK(fn > 0.0);
  CHECK(ft.y < 0.0);  // opposes the slide
  CHECK(norm(ft) <= params.friction_coeff * fn + 1e-9);
  CHECK(norm(ft) == doctest::Approx(params.friction_coeff * fn));  // fully sliding
}

TEST_CASE("newton's third law with torque consistency on random contacts") {
  DebrisState debris = unit_box_debris();
  debris.ang_vel = {0.1, -0.2, 0.05};
  debris.lin_vel = {0.02, 0.01, -0.03};
  ContactParams params;
  auto rng = test::seeded_rng(99);

  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 p = test::random_vec(rng, 1.1);
    NetState net = single_node(p, test::random_vec(rng, 1.0));
    ForceBuffer forces;
    forces.resize(1);
    const int count = net_debris_contact(net, debris, params, forces);
    if (count == 0) continue;

    CHECK(norm(forces.node_force[0] + forces.debris_force) < 1e-10);
    const Vec3 expected_torque = cross(p - debris.position, forces.debris_force);
    CHECK(norm(forces.debris_torque - expected_torque) < 1e-10);

    // Cone and no-adhesion invariants.
    const auto sd = signed_distance(debris.geometry, p, debris.position, debris.orientation);
    const double fn = dot(forces.node_force[0], sd.normal);
    CHECK(fn >= -1e-12);
    const Vec3 ft = forces.node_force[0] - sd.normal * fn;
    CHECK(norm(ft) <= params.friction_coeff * fn + 1e-9);
  }
}

TEST_CASE("contact count equals the nodes within node_radius") {
  SimConfig config;
  Scene scene = init_scene(config);
  ContactParams params;

  // Move some nodes into contact by hand.
  scene.net.pos[0] = scene.debris.position;                    // deep inside
  scene.net.pos[1] = {5.01, 0, 0};                             // within radius of +x face
  scene.net.pos[2] = {5.2, 0, 0};                              // outside
  int expected = 0;
  for (int i = 0; i < scene.net.node_count(); ++i) {
    const auto sd = signed_distance(scene.debris.geometry, scene.net.pos[i],
                                    scene.debris.position, scene.debris.orientation);
    if (sd.distance < params.node_radius) ++expected;
  }

  ForceBuffer forces;
  forces.resize(scene.net.node_count());
  CHECK(net_debris_contact(scene.net, scene.debris, params, forces) == expected);
  CHECK(contact_count(scene.net, scene.debris, params) == expected);
}

TEST_CASE("self contact") {
  ContactParams params;

  NetState net;
  net.rows = 2;
  net.cols = 2;
  net.rest_spacing = 1.0;
  net.pos = {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}};
  net.vel.assign(4, Vec3{});
  net.mass.assign(4, 0.1);
  net.corner_indices = {0, 1, 3, 2};

  SUBCASE("flat net at rest spacing is quiet") {
    ForceBuffer forces;
    forces.resize(4);
    self_contact(net, params, forces);
    for (const auto& f : forces.node_force) CHECK(norm(f) == 0.0);
  }

  SUBCASE("grid neighbors are excluded even when overlapping") {
    net.pos[1] = {0, 0.01, 0};  // overlaps node 0 but is an adjacent grid node
    ForceBuffer forces;
    forces.resize(4);
    self_contact(net, params, forces);
    for (const auto& f : forces.node_force) CHECK(norm(f) == 0.0);
  }

  SUBCASE("non-adjacent overlap repels with k(2r - d)") {
    NetState tall;
    tall.rows = 4;
    tall.cols = 1;
    tall.rest_spacing = 1.0;
    tall.pos = {{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0.06, 0, 0}};  // 3 near 0, not adjacent
    tall.vel.assign(4, Vec3{});
    tall.mass.assign(4, 0.1);
    tall.corner_indices = {0, 0, 3, 3};

    ForceBuffer forces;
    forces.resize(4);
    self_contact(tall, params, forces);
    const double pen = 2.0 * params.node_radius - 0.06;
    CHECK(forces.node_force[3].x == doctest::Approx(params.penalty_stiffness * pen));
    CHECK(norm(forces.node_force[0] + forces.node_force[3]) < 1e-12);
  }

  SUBCASE("disabled flag silences everything") {
    params.self_contact_enabled = false;
    net.pos[3] = {0, 0.02, 0.02};
    ForceBuffer forces;
    forces.resize(4);
    self_contact(net, params, forces);
    for (const auto& f : forces.node_force) CHECK(norm(f) == 0.0);
  }
}

TEST_CASE("spatial hash returns a superset of brute-force near pairs") {
  auto rng = test::seeded_rng(2024);
  std::uniform_real_distribution<double> span(-3.0, 3.0);
  const double cutoff = 0.1;

  for (int config = 0; config < 1000; ++config) {
    const int n = 20 + static_cast<int>(rng() % 60);
    std::vector<Vec3> pts(n);
    for (auto& p : pts) p = {span(rng), span(rng), span(rng)};
    // Cluster some points to force collisions.
    for (int k = 0; k < n / 4; ++k) pts[k] = pts[n - 1 - k] + test::random_vec(rng, 0.08);

    const SpatialHash hash(pts, cutoff);
    std::set<std::pair<int, int>> hashed;
    hash.for_each_near_pair([&](int i, int j) { hashed.insert({i, j}); });

    for (const auto& pair : test::brute_force_near_pairs(pts, cutoff)) {
      CHECK(hashed.count(pair) == 1);
    }
  }
}
