#include <doctest.h>

#include "relforms/bracket.hpp"
#include "relforms/generators.hpp"
#include "relforms/kernels.hpp"
#include "relforms/scenario.hpp"
#include "relforms/verify.hpp"

using namespace relforms;

namespace {

PhaseSpacePoint sample_point(bool with_field) {
  PhaseSpacePoint pt;
  ParticleState ps;
  ps.mass = 1.2;
  ps.charge = 0.1;
  ps.x = {{0.1, 0.3, -0.2, 0.15}};
  ps.p = {{1.4, 0.2, -0.1, 0.05}};
  pt.particles.push_back(ps);
  if (with_field) {
    LatticeSpec spec;
    spec.dims = {2, 2, 2, 2};
    spec.spacing = {0.5, 0.5, 0.5, 0.5};
    spec.init_q = {AmplitudeInit::Kind::Affine, 0.1, {}, 17};
    spec.init_p = {AmplitudeInit::Kind::Affine, 0.1, {}, 23};
    pt.field = build_lattice(spec);
  }
  return pt;
}

}  // namespace

TEST_CASE("canonical pairs have unit brackets") {
  PhaseSpacePoint pt = sample_point(true);
  auto coord_x = [](std::size_t j, int mu) {
    return PhaseFunctional([j, mu](const PhaseSpacePoint& p) {
      return Cxd(p.particles[j].x[mu], 0.0);
    });
  };
  auto coord_p = [](std::size_t j, int mu) {
    return PhaseFunctional([j, mu](const PhaseSpacePoint& p) {
      return Cxd(p.particles[j].p[mu], 0.0);
    });
  };
  CHECK(abs(poisson_bracket(coord_x(0, 1), coord_p(0, 1), pt) - Cxd(1, 0)) < 1e-10);
  CHECK(abs(poisson_bracket(coord_x(0, 1), coord_p(0, 2), pt)) < 1e-10);
  CHECK(abs(poisson_bracket(coord_x(0, 0), coord_x(0, 1), pt)) < 1e-10);

  // rescaled mode pairs [Qt^mu, Pt_nu] = delta^mu_nu delta_kk'
  auto mode_q = [](std::size_t m, int mu) {
    return PhaseFunctional([m, mu](const PhaseSpacePoint& p) {
      return p.field.modes[m].Q[mu] * std::sqrt(p.field.modes[m].weight);
    });
  };
  auto mode_p = [](std::size_t m, int mu) {
    return PhaseFunctional([m, mu](const PhaseSpacePoint& p) {
      return p.field.modes[m].P[mu] * std::sqrt(p.field.modes[m].weight);
    });
  };
  CHECK(abs(poisson_bracket(mode_q(3, 2), mode_p(3, 2), pt) - Cxd(1, 0)) < 1e-9);
  CHECK(abs(poisson_bracket(mode_q(3, 2), mode_p(5, 2), pt)) < 1e-9);
  CHECK(abs(poisson_bracket(mode_q(3, 2), mode_p(3, 1), pt)) < 1e-9);
}

TEST_CASE("bracket of two explicit quadratics matches the hand result") {
  PhaseSpacePoint pt = sample_point(false);
  // F = x^1 p_1, G = p_1^2 + x^1 x^2:
  //   [F,G] = (dF/dx1)(dG/dp1) - (dF/dp1)(dG/dx1) = 2 p_1^2 - x^1 x^2
  PhaseFunctional F = [](const PhaseSpacePoint& p) {
    return Cxd(p.particles[0].x[1] * p.particles[0].p[1], 0.0);
  };
  PhaseFunctional G = [](const PhaseSpacePoint& p) {
    return Cxd(p.particles[0].p[1] * p.particles[0].p[1] +
                   p.particles[0].x[1] * p.particles[0].x[2],
               0.0);
  };
  double x1 = pt.particles[0].x[1], x2 = pt.particles[0].x[2], p1 = pt.particles[0].p[1];
  Cxd expect(2 * p1 * p1 - x1 * x2, 0.0);
  CHECK(abs(poisson_bracket(F, G, pt) - expect) < 1e-10);
}

TEST_CASE("kernel commutators reproduce the structure constants exactly") {
  BracketReport rep = verify_kernel_algebra();
  CHECK(rep.all_pass());
  CHECK(rep.max_residual() == 0.0);  // integer arithmetic on kernel entries
}

TEST_CASE("kernel evaluation matches the generator field parts") {
  PhaseSpacePoint pt = sample_point(true);
  pt.particles.clear();
  GeneratorSet gen = generators_general(pt, FormOfDynamics::instant());
  for (int nu = 0; nu < 4; ++nu) {
    Cxd v = evaluate_kernel(kernel_translation(nu), pt);
    CHECK(abs(v - gen.P[nu]) < 1e-12);
  }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      Cxd v = evaluate_kernel(kernel_rotation(a, b), pt);
      CHECK(abs(v - gen.M[std::size_t(a)][std::size_t(b)]) < 1e-12);
    }
}

TEST_CASE("dual engine: numeric field brackets converge to the kernel values") {
  // lattice refined along axis 0, smooth profile there, affine elsewhere
  auto residual_at = [](int n, double h) {
    LatticeSpec spec;
    spec.dims = {n, 3, 3, 3};
    spec.spacing = {h, 0.4, 0.4, 0.4};
    spec.init_q = {AmplitudeInit::Kind::Gaussian, 0.3, {0.6, 0, 0, 0}, 31};
    spec.init_p = {AmplitudeInit::Kind::Constant, 0.2, {}, 37};
    PhaseSpacePoint pt;
    pt.field = build_lattice(spec);
    GenGradients g = generator_gradients(pt, FormOfDynamics::instant(), GeneratorBasis::General);
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        for (int mu = 0; mu < 4; ++mu) {
          Cxd numeric = bracket_of_generators(g, GeneratorId::m(a, b), GeneratorId::p(mu));
          OperatorKernel comm = kernel_commutator(kernel_rotation(a, b), kernel_translation(mu));
          Cxd exact = evaluate_kernel(comm, pt);
          worst = std::max(worst, abs(numeric - exact));
        }
    return worst;
  };
  double extent = 0.5 * 4;
  double r1 = residual_at(5, extent / 4);
  double r2 = residual_at(9, extent / 8);
  double r3 = residual_at(17, extent / 16);
  // two successive halvings; O(h^2) or better
  CHECK(r2 < 0.35 * r1);
  CHECK(r3 < 0.35 * r2);
}
