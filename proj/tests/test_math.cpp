#include <doctest.h>

#include "netsim/math.hpp"
#include "oracles.hpp"

using namespace netsim;

TEST_CASE("vector algebra basics") {
  const Vec3 a{1, 2, 3}, b{-2, 0.5, 4};
  CHECK(dot(a, b) == doctest::Approx(11.0));
  const Vec3 c = cross(a, b);
  CHECK(dot(c, a) == doctest::Approx(0.0));
  CHECK(dot(c, b) == doctest::Approx(0.0));
  CHECK(norm(normalized(a)) == doctest::Approx(1.0));
}

TEST_CASE("matrix inverse") {
  Mat3 m;
  m(0, 0) = 4; m(0, 1) = 1; m(0, 2) = 0.5;
  m(1, 0) = 1; m(1, 1) = 3; m(1, 2) = -1;
  m(2, 0) = 0.5; m(2, 1) = -1; m(2, 2) = 5;
  const Mat3 id = m * inverse(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("quaternion rotation matches matrix form") {
  auto rng = test::seeded_rng(42);
  for (int k = 0; k < 20; ++k) {
    const Vec3 axis = test::random_vec(rng, 1.0);
    if (norm(axis) < 1e-6) continue;
    const Quat q = Quat::from_axis_angle(axis, 0.3 + 0.1 * k);
    const Vec3 v = test::random_vec(rng, 5.0);
    const Vec3 r1 = q.rotate(v);
    const Vec3 r2 = q.to_matrix() * v;
    CHECK(norm(r1 - r2) < 1e-12);
    CHECK(norm(q.rotate_inverse(r1) - v) < 1e-12);
    CHECK(norm(r1) == doctest::Approx(norm(v)));  // isometry
  }
}

TEST_CASE("symmetric eigen solver recovers known spectrum") {
  // Diagonal case.
  const SymEigen3 d = sym_eigen3(Mat3::diagonal(3.0, 1.0, 2.0));
  CHECK(d.values[0] == doctest::Approx(1.0));
  CHECK(d.values[1] == doctest::Approx(2.0));
  CHECK(d.values[2] == doctest::Approx(3.0));
  CHECK(std::abs(d.vectors[0].y) == doctest::Approx(1.0));

  // Rotated diagonal: eigenvalues invariant, eigenvectors rotate.
  const Quat q = Quat::from_axis_angle({1, 2, -1}, 0.8);
  const Mat3 r = q.to_matrix();
  const Mat3 a = r * Mat3::diagonal(5.0, 0.5, 2.0) * r.transposed();
  const SymEigen3 e = sym_eigen3(a);
  CHECK(e.values[0] == doctest::Approx(0.5));
  CHECK(e.values[1] == doctest::Approx(2.0));
  CHECK(e.values[2] == doctest::Approx(5.0));
  const Vec3 expected = r * Vec3{0, 1, 0};  // eigenvector of 0.5
  CHECK(std::abs(dot(e.vectors[0], expected)) == doctest::Approx(1.0).epsilon(1e-9));

  // A v = lambda v for every pair.
  for (int i = 0; i < 3; ++i) {
    const Vec3 av = a * e.vectors[i];
    CHECK(norm(av - e.vectors[i] * e.values[i]) < 1e-9);
  }
}

TEST_CASE("orientation integration stays unit norm") {
  Quat q;
  const Vec3 omega{0.3, -1.2, 0.7};
  for (int i = 0; i < 10000; ++i) q = integrate_orientation(q, omega, 1e-3);
  CHECK(std::abs(q.norm() - 1.0) < 1e-12);
}
