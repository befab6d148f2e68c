#include <doctest.h>

#include "relforms/reduced3d.hpp"

using namespace relforms;

namespace {

ReducedPoint sample_reduced(double charge, double amplitude, std::uint64_t seed) {
  ReducedLatticeSpec spec;
  spec.dims = {2, 2, 2};
  spec.spacing = {0.5, 0.5, 0.5};
  spec.amplitude = amplitude;
  spec.seed = seed;
  std::vector<ReducedParticle> particles;
  particles.push_back({1.0, charge, {0.2, -0.1, 0.15}, {0.1, 0.05, -0.1}});
  particles.push_back({1.4, -charge, {-0.15, 0.2, 0.1}, {-0.05, 0.1, 0.15}});
  return build_reduced_point(spec, particles);
}

}  // namespace

TEST_CASE("reduced bracket values") {
  ReducedPoint pt = sample_reduced(0.0, 0.01, 3);
  double w = pt.modes[0].weight;
  Cxd b00 = reduced_bracket(0, 0, 0, 0, pt);
  CHECK(b00.re == doctest::Approx(0.0));
  CHECK(b00.im == doctest::Approx(-1.0 / (4.0 * M_PI * M_PI * w)).epsilon(1e-12));
  // off-diagonal metric components vanish, as do mismatched wavevectors
  CHECK(abs(reduced_bracket(1, 0, 2, 0, pt)) == 0.0);
  CHECK(abs(reduced_bracket(0, 0, 0, 1, pt)) == 0.0);
  Cxd b11 = reduced_bracket(1, 2, 1, 2, pt);
  CHECK(b11.im == doctest::Approx(+1.0 / (4.0 * M_PI * M_PI * w)).epsilon(1e-12));
}

TEST_CASE("reduced generators: rest particle values") {
  ReducedLatticeSpec spec;
  spec.amplitude = 0.0;
  std::vector<ReducedParticle> particles;
  particles.push_back({1.3, 0.0, {0, 0, 0}, {0, 0, 0}});
  ReducedPoint pt = build_reduced_point(spec, particles);
  GeneratorSet g = generators_reduced(pt);
  CHECK(g.P[0].re == doctest::Approx(1.3));  // energy of a rest particle
  for (int a = 1; a < 4; ++a) {
    CHECK(std::abs(g.P[a].re) < 1e-14);
    CHECK(abs(g.M[std::size_t(a)][0]) < 1e-14);  // boosts vanish at the origin
  }
}

TEST_CASE("reduced closure: free particles plus field") {
  ReducedPoint pt = sample_reduced(0.0, 0.02, 5);
  BracketReport rep = verify_reduced_lie_algebra(pt, 1e-10);
  CHECK(rep.checks.size() == 45);
  INFO("max residual ", rep.max_residual());
  CHECK(rep.all_pass());
}

TEST_CASE("reduced closure: interacting") {
  ReducedPoint pt = sample_reduced(0.04, 0.02, 7);
  BracketReport rep = verify_reduced_lie_algebra(pt, 1e-6);
  INFO("max residual ", rep.max_residual());
  CHECK(rep.all_pass());
}

TEST_CASE("reduced Currie conditions") {
  ReducedPoint pt = sample_reduced(0.04, 0.02, 9);
  BracketReport rep = verify_reduced_currie(pt, 1e-8, 1e-10);
  INFO("max residual ", rep.max_residual());
  CHECK(rep.all_pass());
}

TEST_CASE("reduced potential is real for conjugate-paired amplitudes") {
  ReducedPoint pt = sample_reduced(0.1, 0.05, 11);
  TReducedPoint<double> tp = make_treduced<double>(pt);
  CVec4d a = reduced_potential(tp, std::array<double, 3>{0.2, -0.3, 0.1});
  for (int mu = 0; mu < 4; ++mu) CHECK(std::abs(a[mu].im) < 1e-13);
}
