#include <doctest.h>

#include "relforms/phase_space.hpp"
#include "relforms/scenario.hpp"

using namespace relforms;

namespace {

Scenario minimal_scenario() {
  return load_scenario(R"({
    "particles": [{"mass": 1.0, "charge": 0.0, "x0": [0,0,0,0], "p_spatial": [0,0,0]}],
    "lattice": {"dims": [0,0,0,0]}
  })");
}

}  // namespace

TEST_CASE("minimal scenario: one particle, empty lattice") {
  Scenario sc = minimal_scenario();
  PhaseSpacePoint pt = build_point(sc);
  CHECK(pt.particles.size() == 1);
  CHECK(pt.field.size() == 0);
}

TEST_CASE("null-cone mode rejected") {
  // offset 0 on an odd axis count puts a node at the origin plane k.k = 0
  CHECK_THROWS_AS(load_scenario(R"({
    "lattice": {"dims": [3,3,3,3], "spacing": 0.5, "offset": 0.0}
  })"),
                  ValidationError);
}

TEST_CASE("unknown keys and malformed docs are diagnosed") {
  CHECK_THROWS_WITH_AS(load_scenario(R"({"particlez": []})"),
                       doctest::Contains("unknown key"), ValidationError);
  CHECK_THROWS_WITH_AS(load_scenario("{ not json"), doctest::Contains("parse error"),
                       ValidationError);
  CHECK_THROWS_AS(load_scenario(R"({"particles": [{"mass": -2.0}]})"), ValidationError);
}

TEST_CASE("scenario round-trips through its serializer") {
  std::string text = R"({
    "seed": 42,
    "particles": [
      {"mass": 1.0, "charge": 0.05, "x0": [0, 0.1, -0.2, 0.3], "p_spatial": [0.2, 0, 0.1]},
      {"mass": 2.0, "charge": -0.05, "x0": [0, -0.4, 0.2, 0], "p_spatial": [0, 0.3, 0]}
    ],
    "lattice": {"dims": [2,2,2,2], "spacing": 0.5, "paired": true,
                "init_q": {"kind": "gaussian", "amplitude": 0.01, "sigma": [1,1,1,1], "seed": 3}},
    "form": {"kind": "hyperboloid", "A": 1.0},
    "frame": {"kind": "rotation", "axis": 3, "rate": 0.25},
    "integrator": {"method": "rk4", "step": 0.005, "tau_span": [0, 1]}
  })";
  Scenario sc = load_scenario(text);
  Scenario sc2 = load_scenario(scenario_to_json(sc));
  CHECK(scenario_to_json(sc) == scenario_to_json(sc2));
  CHECK(sc2.particles.size() == 2);
  CHECK(sc2.lattice.paired);
  PhaseSpacePoint pt = build_point(sc2);
  CHECK(pt.field.size() == 16);
}

TEST_CASE("half-offset lattice nodes avoid the null cone") {
  LatticeSpec spec;
  spec.dims = {4, 2, 2, 2};
  spec.spacing = {0.5, 0.5, 0.5, 0.5};
  ModeLattice lat = build_lattice(spec);
  for (const auto& m : lat.modes) {
    double kk = contract(m.k, flip_index(m.k));
    CHECK(std::abs(kk) > 1e-6);
  }
  // negation symmetry present on even dims
  for (int mir : lat.mirror) CHECK(mir >= 0);
}

TEST_CASE("vector potential") {
  SUBCASE("empty lattice gives zero") {
    PhaseSpacePoint pt;
    pt.particles.push_back({});
    CVec4d a = vector_potential(pt, FourVector{{0.3, 0.1, 0, 0}});
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(a[mu].re == 0.0);
      CHECK(a[mu].im == 0.0);
    }
  }
  SUBCASE("single mode at the origin is w/N(k) Q") {
    PhaseSpacePoint pt;
    FieldMode m;
    m.k = {{0.7, 0.2, 0.0, 0.0}};
    m.weight = 0.3;
    m.Q = {{Cxd(1, 0), Cxd(0, 0), Cxd(0, 0), Cxd(0, 0)}};
    pt.field.modes.push_back(m);
    CVec4d a = vector_potential(pt, FourVector{});
    double expect = 0.3 / mode_norm(m.k);
    CHECK(a[0].re == doctest::Approx(expect).epsilon(1e-14));
    CHECK(std::abs(a[0].im) < 1e-15);
    for (int mu = 1; mu < 4; ++mu) CHECK(abs(a[mu]) < 1e-15);
  }
  SUBCASE("linearity in the mode variables") {
    LatticeSpec spec;
    spec.dims = {2, 2, 2, 2};
    spec.spacing = {0.6, 0.6, 0.6, 0.6};
    spec.init_q = {AmplitudeInit::Kind::Gaussian, 0.2, {1, 1, 1, 1}, 5};
    PhaseSpacePoint p1;
    p1.field = build_lattice(spec);
    spec.init_q.seed = 9;
    PhaseSpacePoint p2;
    p2.field = build_lattice(spec);
    PhaseSpacePoint sum = p1;
    for (std::size_t m = 0; m < sum.field.size(); ++m)
      for (int mu = 0; mu < 4; ++mu) sum.field.modes[m].Q[mu] += p2.field.modes[m].Q[mu];
    FourVector x{{0.2, -0.1, 0.3, 0.05}};
    CVec4d a1 = vector_potential(p1, x), a2 = vector_potential(p2, x), as = vector_potential(sum, x);
    for (int mu = 0; mu < 4; ++mu) CHECK(abs(as[mu] - a1[mu] - a2[mu]) < 1e-15);
  }
  SUBCASE("paired lattice gives a real potential") {
    LatticeSpec spec;
    spec.dims = {2, 2, 2, 2};
    spec.spacing = {0.5, 0.5, 0.5, 0.5};
    spec.paired = true;
    spec.init_q = {AmplitudeInit::Kind::Gaussian, 0.3, {1, 1, 1, 1}, 12};
    spec.init_p = {AmplitudeInit::Kind::Constant, 0.2, {}, 8};
    PhaseSpacePoint pt;
    pt.field = build_lattice(spec);
    CVec4d a = vector_potential(pt, FourVector{{0.4, 0.2, -0.3, 0.1}});
    for (int mu = 0; mu < 4; ++mu) CHECK(std::abs(a[mu].im) < 1e-14);
  }
}

TEST_CASE("constraint residual") {
  SUBCASE("free mass shell") {
    PhaseSpacePoint pt;
    ParticleState ps;
    ps.mass = 1.0;
    ps.p = {{1.0, 0, 0, 0}};
    pt.particles.push_back(ps);
    CHECK(constraint_residual(pt, 0) == doctest::Approx(0.0));
  }
  SUBCASE("free off-shell expansion") {
    PhaseSpacePoint pt;
    ParticleState ps;
    ps.mass = 1.3;
    double E = 1.7, p1 = 0.4;
    ps.p = {{E, -p1, 0, 0}};  // covariant p_1 = -p^1
    pt.particles.push_back(ps);
    CHECK(constraint_residual(pt, 0) ==
          doctest::Approx(E * E - p1 * p1 - ps.mass * ps.mass).epsilon(1e-14));
  }
  SUBCASE("interacting case matches a brute-force oracle") {
    LatticeSpec spec;
    spec.dims = {2, 2, 2, 2};
    spec.spacing = {0.5, 0.5, 0.5, 0.5};
    spec.paired = true;
    spec.init_q = {AmplitudeInit::Kind::Gaussian, 0.2, {1, 1, 1, 1}, 3};
    spec.init_p = {AmplitudeInit::Kind::Affine, 0.1, {}, 4};
    PhaseSpacePoint pt;
    pt.field = build_lattice(spec);
    ParticleState ps;
    ps.mass = 1.1;
    ps.charge = 0.4;
    ps.x = {{0.3, 0.2, -0.1, 0.4}};
    ps.p = {{1.4, 0.2, -0.3, 0.1}};
    pt.particles.push_back(ps);

    // oracle: explicit loops over modes, independent of the library path
    double a_re[4] = {0, 0, 0, 0};
    for (const auto& m : pt.field.modes) {
      double phase = 0.0;
      for (int mu = 0; mu < 4; ++mu) phase += m.k[mu] * ps.x[mu];
      double c = std::cos(phase), s = std::sin(phase);
      double kk = m.k[0] * m.k[0] - m.k[1] * m.k[1] - m.k[2] * m.k[2] - m.k[3] * m.k[3];
      double n = std::sqrt(4.0 * M_PI * M_PI * M_PI * std::abs(kk));
      for (int mu = 0; mu < 4; ++mu) {
        double qre = m.Q[mu].re, qim = m.Q[mu].im;
        double pre = (mu == 0 ? m.P[mu].re : -m.P[mu].re);
        double pim = (mu == 0 ? m.P[mu].im : -m.P[mu].im);
        a_re[mu] += m.weight / n * (qre * c - qim * s + pre * c + pim * s);
      }
    }
    double pi[4];
    for (int mu = 0; mu < 4; ++mu) {
      double sign = mu == 0 ? 1.0 : -1.0;
      pi[mu] = ps.p[mu] - ps.charge * sign * a_re[mu];
    }
    double expect =
        pi[0] * pi[0] - pi[1] * pi[1] - pi[2] * pi[2] - pi[3] * pi[3] - ps.mass * ps.mass;
    CHECK(constraint_residual(pt, 0) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("projection onto the constraints") {
  SUBCASE("free particle at rest") {
    PhaseSpacePoint pt;
    ParticleState ps;
    ps.mass = 1.0;
    pt.particles.push_back(ps);
    PhaseSpacePoint out = project_to_constraints(pt, FormOfDynamics::instant());
    CHECK(out.particles[0].p[0] == doctest::Approx(1.0));
    CHECK(out.particles[0].x[0] == 0.0);
  }
  SUBCASE("3-4-5 triangle") {
    PhaseSpacePoint pt;
    ParticleState ps;
    ps.mass = 4.0;
    ps.p = {{0.0, -3.0, 0, 0}};
    pt.particles.push_back(ps);
    PhaseSpacePoint out = project_to_constraints(pt, FormOfDynamics::instant());
    CHECK(out.particles[0].p[0] == doctest::Approx(5.0));
  }
  SUBCASE("charged particle in a one-mode field lands on the shell") {
    PhaseSpacePoint pt;
    FieldMode m;
    m.k = {{0.7, 0.3, 0.1, -0.2}};
    m.weight = 0.4;
    for (int mu = 0; mu < 4; ++mu) m.Q[mu] = Cxd(0.1 * (mu + 1), -0.05);
    pt.field.modes.push_back(m);
    ParticleState ps;
    ps.mass = 1.0;
    ps.charge = 0.3;
    ps.x = {{0.5, 0.1, 0.2, 0.3}};
    ps.p = {{0.9, 0.2, -0.1, 0.4}};
    pt.particles.push_back(ps);
    PhaseSpacePoint out = project_to_constraints(pt, FormOfDynamics::instant());
    CHECK(std::abs(constraint_residual(out, 0)) < 1e-10);
    // idempotent
    PhaseSpacePoint out2 = project_to_constraints(out, FormOfDynamics::instant());
    CHECK(std::abs(out2.particles[0].p[0] - out.particles[0].p[0]) < 1e-12);
  }
  SUBCASE("light cone and hyperboloid place positions on the surface") {
    for (auto form : {FormOfDynamics::light_cone(), FormOfDynamics::hyperboloid(1.0)}) {
      PhaseSpacePoint pt;
      ParticleState ps;
      ps.mass = 1.0;
      ps.x = {{-0.9, 0.4, 0.3, -0.2}};
      ps.p = {{1.2, 0.1, 0.0, 0.2}};
      pt.particles.push_back(ps);
      PhaseSpacePoint out = project_to_constraints(pt, form);
      CHECK(std::abs(form.g(out.particles[0].x)) < 1e-10);
      CHECK(std::abs(constraint_residual(out, 0)) < 1e-10);
      CHECK(out.particles[0].x[0] < 0.0);  // root nearest the incoming sign
    }
  }
}

TEST_CASE("form gradients match finite differences") {
  Rng rng(21);
  for (auto form : {FormOfDynamics::instant(), FormOfDynamics::light_cone(),
                    FormOfDynamics::hyperboloid(1.3)}) {
    for (int it = 0; it < 5; ++it) {
      FourVector q;
      for (int i = 0; i < 4; ++i) q[i] = rng.uniform(-1, 1);
      FourVector g = form.grad(q);
      for (int nu = 0; nu < 4; ++nu) {
        double h = 1e-5 * std::max(std::abs(q[nu]), 1.0);
        FourVector qp = q, qm = q;
        qp[nu] += h;
        qm[nu] -= h;
        double fd = (form.g(qp) - form.g(qm)) / (2 * h);
        CHECK(g[nu] == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
  // instant gradient is exact
  FormOfDynamics inst = FormOfDynamics::instant();
  FourVector g = inst.grad(FourVector{{0.3, 1, 2, 3}});
  CHECK(g[0] == 1.0);
  CHECK(g[1] == 0.0);
}
