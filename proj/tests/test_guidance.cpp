#include <doctest.h>

#include "netsim/dynamics.hpp"
#include "netsim/guidance.hpp"
#include "oracles.hpp"

using namespace netsim;

namespace {

std::array<Vec3, 4> square_xy(double side, const Vec3& center = {}) {
  const double h = side / 2.0;
  return {center + Vec3{-h, -h, 0}, center + Vec3{h, -h, 0}, center + Vec3{h, h, 0},
          center + Vec3{-h, h, 0}};
}

NetState corner_only_net(const std::array<Vec3, 4>& corners, double side) {
  NetState net;
  net.rows = net.cols = 2;
  net.rest_spacing = side;
  net.pos = {corners[0], corners[1], corners[2], corners[3]};
  net.vel.assign(4, Vec3{});
  net.mass.assign(4, 350.0);
  net.corner_indices = {0, 1, 2, 3};
  return net;
}

}  // namespace

TEST_CASE("plane fit on a square") {
  const auto corners = square_xy(2.0);

  SUBCASE("xy square has a z normal through the center") {
    const PlaneFit fit = fit_plane_pca(corners, {0, 0, 10});
    CHECK(std::abs(fit.normal.z) == doctest::Approx(1.0));
    CHECK(norm(fit.centroid) < 1e-12);
    CHECK(fit.normal.z > 0.0);  // oriented toward the target
    CHECK_FALSE(fit.degenerate);
  }

  SUBCASE("translation moves only the centroid") {
    std::array<Vec3, 4> moved = corners;
    for (auto& c : moved) c += Vec3{5, 5, 5};
    const PlaneFit fit = fit_plane_pca(moved, {5, 5, 30});
    CHECK(std::abs(fit.normal.z) == doctest::Approx(1.0));
    CHECK(norm(fit.centroid - Vec3{5, 5, 5}) < 1e-12);
  }

  SUBCASE("rotation carries the normal") {
    const Quat q = Quat::from_axis_angle({1, 1, 0}, 0.9);
    std::array<Vec3, 4> rotated;
    for (int i = 0; i < 4; ++i) rotated[i] = q.rotate(corners[i]);
    const Vec3 expected = q.rotate({0, 0, 1});
    const PlaneFit fit = fit_plane_pca(rotated, expected * 10.0);
    CHECK(std::abs(dot(fit.normal, expected)) == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("collinear corners fall back to the target direction") {
    const std::array<Vec3, 4> line = {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 0},
                                      Vec3{3, 0, 0}};
    const PlaneFit fit = fit_plane_pca(line, {1.5, 0, 9});
    CHECK(fit.degenerate);
    CHECK(norm(fit.normal - Vec3{0, 0, 1}) < 1e-9);
  }
}

TEST_CASE("leftover angle folds to [0, pi/2]") {
  const Vec3 centroid{0, 0, 0}, target{0, 0, 10};
  CHECK(leftover_angle({0, 0, 1}, centroid, target) == doctest::Approx(0.0));
  CHECK(leftover_angle({0, 0, -1}, centroid, target) == doctest::Approx(0.0));
  CHECK(leftover_angle({1, 0, 0}, centroid, target) == doctest::Approx(M_PI / 2));

  // 120 degrees between normal and direction folds to 60.
  const Vec3 tilted{std::sin(2.0 * M_PI / 3.0), 0, std::cos(2.0 * M_PI / 3.0)};
  CHECK(leftover_angle(tilted, centroid, target) == doctest::Approx(M_PI / 3).epsilon(1e-12));
}

TEST_CASE("projected area of the corner quad") {
  const auto corners = square_xy(1.0);
  CHECK(projected_area(corners, {0, 0, 1}) == doctest::Approx(1.0));
  CHECK(projected_area(corners, {1, 0, 0}) == doctest::Approx(0.0).epsilon(1e-12));

  // Tilting the viewing axis by 60 degrees scales the area by cos(60).
  const Vec3 axis{std::sin(M_PI / 3.0), 0, std::cos(M_PI / 3.0)};
  CHECK(projected_area(corners, axis) == doctest::Approx(0.5).epsilon(1e-12));

  SUBCASE("translation invariance") {
    std::array<Vec3, 4> moved = corners;
    for (auto& c : moved) c += Vec3{-3, 17, 2};
    CHECK(projected_area(moved, {0, 0, 1}) == doctest::Approx(1.0));
  }
}

TEST_CASE("orienting targets form a stretched square facing the target") {
  const double side = 9.0 * (10.0 / 9.0);
  const auto corners = square_xy(side, {0, 0, 0});
  NetState net = corner_only_net(corners, side);

  SUBCASE("already aligned net is a fixed point") {
    const TargetSet t = orienting_targets(net, {0, 0, 7});
    for (int k = 0; k < 4; ++k) CHECK(norm(t.pos[k] - corners[k]) < 1e-6);
  }

  SUBCASE("targets have zero leftover angle and full square geometry") {
    const Vec3 target{3, -2, 8};
    const TargetSet t = orienting_targets(net, target);

    const PlaneFit fit = fit_plane_pca(t.pos, target);
    Vec3 centroid = (t.pos[0] + t.pos[1] + t.pos[2] + t.pos[3]) * 0.25;
    CHECK(leftover_angle(fit.normal, centroid, target) < 1e-9);

    // Perimeter spacing = side, diagonals = sqrt(2) side.
    for (int k = 0; k < 4; ++k)
      CHECK(norm(t.pos[k] - t.pos[(k + 1) % 4]) == doctest::Approx(side).epsilon(1e-9));
    CHECK(norm(t.pos[0] - t.pos[2]) == doctest::Approx(side * std::sqrt(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("approaching targets add the centroid-to-target vector") {
  const double side = 10.0;
  const auto corners = square_xy(side, {0, 0, 0});
  NetState net = corner_only_net(corners, side);
  GuidanceConfig config;

  const Vec3 target{0, 0, 5};
  const TargetSet orient = orienting_targets(net, target);
  const TargetSet approach = approaching_targets(net, target, config);

  for (int k = 0; k < 4; ++k) {
    const Vec3 shift = approach.pos[k] - orient.pos[k];
    CHECK(norm(shift - Vec3{0, 0, 5}) < 1e-9);  // full vector, same for every corner
  }

  SUBCASE("coincident centroid leaves the orienting targets") {
    const TargetSet same = approaching_targets(net, {0, 0, 0}, config);
    const TargetSet base = orienting_targets(net, {0, 0, 0});
    for (int k = 0; k < 4; ++k) CHECK(norm(same.pos[k] - base.pos[k]) < 1e-12);
  }
}

TEST_CASE("capture targets are the corner mean") {
  const std::array<Vec3, 4> corners = {Vec3{-1, -1, 0}, Vec3{1, -1, 0}, Vec3{1, 1, 0},
                                       Vec3{-1, 1, 0}};
  NetState net = corner_only_net(corners, 2.0);
  const TargetSet t = capture_targets(net);
  for (int k = 0; k < 4; ++k) CHECK(norm(t.pos[k]) < 1e-12);

  SUBCASE("permutation invariance") {
    NetState shuffled = net;
    shuffled.pos = {corners[2], corners[0], corners[3], corners[1]};
    const TargetSet t2 = capture_targets(shuffled);
    CHECK(norm(t2.pos[0] - t.pos[0]) < 1e-12);
  }

  SUBCASE("coincident corners stay put") {
    NetState collapsed = net;
    for (auto& p : collapsed.pos) p = {2, 3, 4};
    const TargetSet t3 = capture_targets(collapsed);
    for (int k = 0; k < 4; ++k) CHECK(norm(t3.pos[k] - Vec3{2, 3, 4}) < 1e-12);
  }
}

TEST_CASE("fsm transitions fire exactly at the documented guards") {
  GuidanceConfig config;
  DebrisState debris;  // target at the origin

  const double side = 10.0;
  Guidance guidance(config);

  SUBCASE("orienting to approaching needs angle and area together") {
    // Aligned, stretched net facing the debris from +x.
    auto corners = square_xy(side);
    NetState net = corner_only_net(corners, side);
    for (auto& p : net.pos) p = Vec3{5, p.x, p.y};  // plane normal +x, centroid (5,0,0)

    guidance.update(net, debris, 0, 0.0, 0.02);
    CHECK(guidance.phase() == GuidancePhase::Approaching);
  }

  SUBCASE("large leftover angle blocks the transition") {
    auto corners = square_xy(side);
    NetState net = corner_only_net(corners, side);
    // Net plane normal is +z but the target lies along +x: angle 90 degrees.
    for (auto& p : net.pos) p += Vec3{5, 0, 0};
    Guidance g(config);
    g.update(net, debris, 0, 0.0, 0.02);
    CHECK(g.phase() == GuidancePhase::Orienting);
    CHECK(g.last_leftover_angle() > config.leftover_angle_threshold);
  }

  SUBCASE("insufficient projected area blocks the transition") {
    auto corners = square_xy(side);
    NetState net = corner_only_net(corners, side);
    // Fold the quad to shrink its projected area below 80%.
    for (auto& p : net.pos) p = Vec3{5, 0.5 * p.x, p.y};
    Guidance g(config);
    g.update(net, debris, 0, 0.0, 0.02);
    CHECK(g.last_projected_area() < 0.8 * net.stretched_area());
    CHECK(g.phase() == GuidancePhase::Orienting);
  }

  SUBCASE("contact flips approaching to capture; sustained silence retries") {
    auto corners = square_xy(side);
    NetState net = corner_only_net(corners, side);
    for (auto& p : net.pos) p = Vec3{5, p.x, p.y};

    Guidance g(config);
    g.update(net, debris, 0, 0.0, 0.02);
    REQUIRE(g.phase() == GuidancePhase::Approaching);

    g.update(net, debris, 3, 0.02, 0.02);
    CHECK(g.phase() == GuidancePhase::Capture);

    // 99 contact-free steps keep the phase; the 100th triggers the retry.
    for (int i = 0; i < config.no_contact_retry_steps - 1; ++i) {
      g.update(net, debris, 0, 0.0, 0.02);
      CHECK(g.phase() == GuidancePhase::Capture);
    }
    g.update(net, debris, 0, 0.0, 0.02);
    CHECK(g.phase() == GuidancePhase::Orienting);
  }

  SUBCASE("an intervening contact resets the retry counter") {
    auto corners = square_xy(side);
    NetState net = corner_only_net(corners, side);
    for (auto& p : net.pos) p = Vec3{5, p.x, p.y};

    Guidance g(config);
    g.update(net, debris, 0, 0.0, 0.02);
    g.update(net, debris, 1, 0.0, 0.02);
    REQUIRE(g.phase() == GuidancePhase::Capture);

    for (int i = 0; i < 80; ++i) g.update(net, debris, 0, 0.0, 0.02);
    g.update(net, debris, 2, 0.0, 0.02);  // grazing contact resets the debounce
    for (int i = 0; i < 99; ++i) {
      g.update(net, debris, 0, 0.0, 0.02);
      CHECK(g.phase() == GuidancePhase::Capture);
    }
    g.update(net, debris, 0, 0.0, 0.02);
    CHECK(g.phase() == GuidancePhase::Orienting);
  }
}

TEST_CASE("capture detection counts consecutive holds only") {
  GuidanceConfig config;
  DebrisState debris;

  // Small, contact-satisfying configuration with matched velocities.
  const std::array<Vec3, 4> corners = {Vec3{3, -2, -2}, Vec3{3, 2, -2}, Vec3{3, 2, 2},
                                       Vec3{3, -2, 2}};
  NetState net = corner_only_net(corners, 4.0);

  SUBCASE("holding for 200 steps captures") {
    Guidance g(config);
    for (int i = 0; i < config.capture_sustain_steps - 1; ++i) {
      CHECK_FALSE(g.update_capture(net, debris, 5));
    }
    CHECK(g.update_capture(net, debris, 5));
  }

  SUBCASE("one violation at step 199 resets the counter") {
    Guidance g(config);
    for (int i = 0; i < config.capture_sustain_steps - 1; ++i) g.update_capture(net, debris, 5);
    CHECK_FALSE(g.update_capture(net, debris, 0));  // contact lost
    CHECK(g.capture_hold_count() == 0);
    for (int i = 0; i < config.capture_sustain_steps - 1; ++i) {
      CHECK_FALSE(g.update_capture(net, debris, 5));
    }
    CHECK(g.update_capture(net, debris, 5));
  }

  SUBCASE("9 m corner spread fails the 8 m criterion") {
    NetState wide = net;
    wide.pos[0] = {3, -4.5, -4.5};
    wide.pos[2] = {3, 4.5, 4.5};  // diagonal 12.7 m > 8 m
    CHECK_FALSE(Guidance::capture_condition(wide, debris, 5, config));
  }

  SUBCASE("velocity mismatch fails") {
    NetState fast = net;
    for (auto& v : fast.vel) v = {0.2, 0, 0};
    CHECK_FALSE(Guidance::capture_condition(fast, debris, 5, config));
  }

  SUBCASE("barycenter velocity is mass weighted") {
    // Corners at rest dominate: 96 light nodes moving fast barely matter.
    NetState mixed = net;
    mixed.rows = 10;
    mixed.cols = 10;
    mixed.rest_spacing = 4.0 / 9.0;
    mixed.pos.assign(100, Vec3{3, 0, 0});
    mixed.vel.assign(100, Vec3{1.0, 0, 0});  // light nodes at 1 m/s
    mixed.mass.assign(100, 0.1);
    mixed.corner_indices = {mixed.index(0, 0), mixed.index(0, 9), mixed.index(9, 9),
                            mixed.index(9, 0)};
    for (int i : mixed.corner_indices) {
      mixed.mass[i] = 350.0;
      mixed.vel[i] = Vec3{};
    }
    // Weighted mean: 9.6 kg at 1 m/s vs 1400 kg at rest -> ~0.0068 m/s.
    CHECK(norm(mixed.barycenter_velocity()) < 0.01);
    CHECK(Guidance::capture_condition(mixed, debris, 5, config));
  }
}
