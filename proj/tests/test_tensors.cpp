#include <doctest.h>

#include "relforms/frame_path.hpp"
#include "relforms/minkowski.hpp"
#include "relforms/scenario.hpp"

using namespace relforms;

TEST_CASE("metric contraction") {
  FourVector t{{1, 0, 0, 0}};
  FourVector x{{0, 1, 0, 0}};
  CHECK(minkowski_dot(t, t) == doctest::Approx(1.0));
  CHECK(minkowski_dot(x, x) == doctest::Approx(-1.0));

  Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    FourVector u, v;
    for (int i = 0; i < 4; ++i) {
      u[i] = rng.uniform(-2, 2);
      v[i] = rng.uniform(-2, 2);
    }
    CHECK(minkowski_dot(u, v) == doctest::Approx(minkowski_dot(v, u)));
    // raise/lower round trip
    CHECK(contract(flip_index(u), v) == doctest::Approx(minkowski_dot(u, v)));
  }
}

TEST_CASE("boost and rotation constructors are pseudo-orthogonal") {
  CHECK(pseudo_orthogonality_defect(make_boost(0.0, 1)) < 1e-15);
  CHECK(pseudo_orthogonality_defect(make_boost(0.3, 2)) < 1e-12);
  CHECK(pseudo_orthogonality_defect(make_rotation(0.9, 3)) < 1e-12);

  // group inverse
  Mat4 fwd = make_boost(0.7, 1);
  Mat4 bwd = make_boost(-0.7, 1);
  Mat4 prod = fwd * bwd;
  CHECK(pseudo_orthogonality_defect(prod) < 1e-12);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));

  // a g a^T = g entrywise for a 0.3-rapidity boost
  Mat4 a = make_boost(0.3, 1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a(i, k) * metric_diag(k) * a(j, k);
      CHECK(s == doctest::Approx(i == j ? metric_diag(i) : 0.0).epsilon(1e-13));
    }
}

TEST_CASE("angular velocity of a constant frame vanishes") {
  FramePath f = FramePath::statics();
  Mat4 w = angular_velocity(f, 0.4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(w(i, j)) < 1e-15);
}

TEST_CASE("rotation about axis 3 gives w_{12} = +rate") {
  double rate = 0.37;
  FramePath f = FramePath::rotation(rate, 3);
  Mat4 w = angular_velocity(f, 0.8);
  CHECK(w(1, 2) == doctest::Approx(rate).epsilon(1e-12));
  CHECK(w(2, 1) == doctest::Approx(-rate).epsilon(1e-12));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!((i == 1 && j == 2) || (i == 2 && j == 1))) CHECK(std::abs(w(i, j)) < 1e-12);
}

TEST_CASE("angular velocity stays antisymmetric on boost and mixed paths") {
  FramePath f;
  f.rot_rate = 0.31;
  f.rot_axis = 2;
  f.boost_rate = 0.17;
  f.boost_axis = 1;
  f.boost_rap0 = 0.2;
  for (double tau : {0.0, 0.5, 1.3}) {
    Mat4 w = angular_velocity(f, tau);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(std::abs(w(i, j) + w(j, i)) < 1e-12);
  }
}

TEST_CASE("rotating translation velocity") {
  SUBCASE("clock frame") {
    FramePath f = FramePath::instant_clock();
    FourVector zr = rotating_translation_velocity(f, 0.7);
    CHECK(zr[0] == doctest::Approx(-1.0));
    for (int i = 1; i < 4; ++i) CHECK(zr[i] == doctest::Approx(0.0));
  }
  SUBCASE("zero translation stays zero") {
    FramePath f = FramePath::rotation(0.4, 3);
    FourVector zr = rotating_translation_velocity(f, 1.1);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(zr[i]) < 1e-14);
  }
  SUBCASE("rotating frame with constant z equals -w z") {
    FramePath f = FramePath::rotation(0.4, 3);
    f.z0 = {{0.0, 0.3, -0.2, 0.1}};
    double tau = 0.9;
    Mat4 w = angular_velocity_mixed(f, tau);
    FourVector expect = -1.0 * apply(w, f.z0);
    FourVector got = rotating_translation_velocity(f, tau);
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }
  SUBCASE("both assembly routes agree on random paths") {
    Rng rng(11);
    for (int it = 0; it < 10; ++it) {
      FramePath f;
      f.rot_rate = rng.uniform(-0.5, 0.5);
      f.rot_axis = 1 + int(rng.next_u64() % 3);
      f.boost_rate = rng.uniform(-0.4, 0.4);
      f.boost_axis = 1 + int(rng.next_u64() % 3);
      f.zsin_freq = rng.uniform(0.5, 2.0);
      for (int i = 0; i < 4; ++i) {
        f.z0[i] = rng.uniform(-0.4, 0.4);
        f.zlin[i] = rng.uniform(-0.4, 0.4);
        f.zsin[i] = rng.uniform(-0.2, 0.2);
      }
      double tau = rng.uniform(-1.0, 1.0);
      FourVector r1 = rotating_translation_velocity(f, tau);
      FourVector r2 = rotating_translation_velocity_alt(f, tau);
      for (int i = 0; i < 4; ++i) CHECK(std::abs(r1[i] - r2[i]) < 1e-10);
    }
  }
}

TEST_CASE("frame path matrices are pseudo-orthogonal for every tau") {
  FramePath f;
  f.rot_rate = 0.45;
  f.boost_rate = 0.22;
  f.boost_rap0 = -0.1;
  for (double tau : {-1.0, 0.0, 0.35, 2.0}) CHECK(pseudo_orthogonality_defect(f.a(tau)) < 1e-12);
}
