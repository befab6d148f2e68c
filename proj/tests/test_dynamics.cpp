#include <doctest.h>

#include <fstream>

#include "relforms/bracket.hpp"
#include "relforms/dynamics.hpp"
#include "relforms/scenario.hpp"

using namespace relforms;

namespace {

Scenario two_charge_scenario() {
  return load_scenario(R"({
    "particles": [
      {"mass": 1.0, "charge": 0.05, "x0": [0, 0.3, 0, 0.1], "p_spatial": [0.1, 0.05, 0]},
      {"mass": 1.2, "charge": -0.05, "x0": [0, -0.3, 0.1, 0], "p_spatial": [-0.05, 0.1, 0.05]}
    ],
    "lattice": {"dims": [2,2,2,2], "spacing": 0.5, "paired": true,
                "init_q": {"kind": "gaussian", "amplitude": 0.05, "sigma": [1,1,1,1], "seed": 7},
                "init_p": {"kind": "gaussian", "amplitude": 0.05, "sigma": [1,1,1,1], "seed": 8}},
    "integrator": {"step": 0.002, "tau_span": [0, 1]}
  })");
}

PhaseSpacePoint projected_start(const Scenario& sc) {
  return project_to_constraints(build_point(sc), FormOfDynamics::instant());
}

}  // namespace

TEST_CASE("multiplier in the proper-time gauge") {
  CHECK(multiplier_covariant(FourVector{{1, 0, 0, 0}}, 1.0) == doctest::Approx(0.5));
  CHECK(multiplier_covariant(FourVector{{2, 0, 0, 0}}, 2.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(multiplier_covariant(FourVector{{0.1, 1, 0, 0}}, 1.0),
                  NonTimelikeVelocityError);
}

TEST_CASE("generalized Hamiltonian is the multiplier-weighted residual sum") {
  Scenario sc = two_charge_scenario();
  PhaseSpacePoint pt = projected_start(sc);
  MultiplierSet v{0.7, 0.3};
  CHECK(std::abs(hamiltonian_dirac(pt, v)) < 1e-12);  // on-shell

  pt.particles[0].p[0] += 0.1;
  double r0 = constraint_residual(pt, 0), r1 = constraint_residual(pt, 1);
  CHECK(hamiltonian_dirac(pt, v) == doctest::Approx(0.7 * r0 + 0.3 * r1).epsilon(1e-13));
}

TEST_CASE("interaction flow matches finite differences of the Hamiltonian") {
  Scenario sc = two_charge_scenario();
  PhaseSpacePoint pt = projected_start(sc);
  pt.particles[0].p[0] += 0.05;  // off-shell so every term is exercised
  MultiplierSet v{0.4, 0.6};
  PhaseDot dot = interaction_flow(pt, v);

  PhaseFunctional H = [&v](const PhaseSpacePoint& p) {
    return Cxd(hamiltonian_dirac(p, v), 0.0);
  };
  PhaseGradient grad = gradient_fd(pt, H);
  CoordLayout lay = layout_of(pt);
  for (std::size_t j = 0; j < pt.particles.size(); ++j)
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(dot.dx[j][mu] == doctest::Approx(grad[lay.part_p(j, mu)].re).epsilon(1e-7));
      CHECK(dot.dp[j][mu] == doctest::Approx(-grad[lay.part_x(j, mu)].re).epsilon(1e-7));
    }
  // mode part: the Re-potential Hamiltonian is not holomorphic in the mode
  // variables, so compare against the direct current form instead of FD
  for (std::size_t m = 0; m < pt.field.size(); ++m) {
    const auto& fm = pt.field.modes[m];
    CVec4d expect{};
    for (std::size_t j = 0; j < pt.particles.size(); ++j) {
      const auto& ps = pt.particles[j];
      double phase = contract(fm.k, ps.x);
      Cxd em = cis(-phase);
      for (int mu = 0; mu < 4; ++mu)
        expect[mu] += (-ps.charge / mode_norm(fm.k)) * (dot.dx[j][mu] * em);
    }
    for (int mu = 0; mu < 4; ++mu) CHECK(abs(dot.dQ[m][mu] - expect[mu]) < 1e-12);
  }
}

TEST_CASE("flow is linear in the multipliers") {
  Scenario sc = two_charge_scenario();
  PhaseSpacePoint pt = projected_start(sc);
  PhaseDot d1 = interaction_flow(pt, {0.5, 0.25});
  PhaseDot d2 = interaction_flow(pt, {1.0, 0.5});
  for (std::size_t j = 0; j < pt.particles.size(); ++j)
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(d2.dx[j][mu] == doctest::Approx(2 * d1.dx[j][mu]).epsilon(1e-12));
      CHECK(d2.dp[j][mu] == doctest::Approx(2 * d1.dp[j][mu]).epsilon(1e-12));
    }
}

TEST_CASE("free particle runs on a straight world line") {
  Scenario sc = load_scenario(R"({
    "particles": [{"mass": 1.0, "charge": 0.0, "x0": [0, 0.1, 0.2, 0], "p_spatial": [0.3, 0, 0.1]}],
    "integrator": {"step": 0.01, "tau_span": [0, 1]}
  })");
  PhaseSpacePoint start = projected_start(sc);
  IntegrateOptions opts;
  opts.step = 0.01;
  Trajectory traj = integrate_covariant(start, opts);
  FourVector u = (1.0 / start.particles[0].mass) * flip_index(start.particles[0].p);
  for (const auto& s : traj.samples) {
    for (int mu = 0; mu < 4; ++mu) {
      double expect = start.particles[0].x[mu] + u[mu] * s.tau;
      CHECK(std::abs(s.point.particles[0].x[mu] - expect) < 1e-10);
    }
  }
}

TEST_CASE("hamiltonian and oracle world lines agree on an interacting run") {
  Scenario sc = two_charge_scenario();
  PhaseSpacePoint start = projected_start(sc);
  IntegrateOptions opts;
  opts.step = sc.integrator.step;
  opts.tau1 = 1.0;
  opts.drift_bound = 1e-6;
  Trajectory ham = integrate_covariant(start, opts);
  Trajectory orc = oracle_lorentz_force(start, opts);
  REQUIRE(ham.samples.size() == orc.samples.size());
  double worst = 0.0;
  for (std::size_t s = 0; s < ham.samples.size(); ++s)
    for (std::size_t j = 0; j < start.particles.size(); ++j)
      for (int mu = 0; mu < 4; ++mu)
        worst = std::max(worst, std::abs(ham.samples[s].point.particles[j].x[mu] -
                                         orc.samples[s].point.particles[j].x[mu]));
  CHECK(worst < 1e-6);
  CHECK(ham.max_constraint_drift < 1e-8);
}

TEST_CASE("oracle self-convergence and proper-time normalization") {
  Scenario sc = load_scenario(R"({
    "particles": [{"mass": 1.0, "charge": 0.08, "x0": [0, 0.2, 0, 0], "p_spatial": [0.1, 0, 0]}],
    "lattice": {"dims": [2,2,2,2], "spacing": 0.5, "paired": true,
                "init_q": {"kind": "constant", "amplitude": 0.05, "seed": 9}}
  })");
  PhaseSpacePoint start = projected_start(sc);
  IntegrateOptions coarse, fine;
  coarse.step = 0.01;
  coarse.tau1 = 0.5;
  fine.step = 0.0001;
  fine.tau1 = 0.5;
  Trajectory tc = oracle_lorentz_force(start, coarse);
  Trajectory tf = oracle_lorentz_force(start, fine);
  double dev = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    dev = std::max(dev, std::abs(tc.back().particles[0].x[mu] - tf.back().particles[0].x[mu]));
  CHECK(dev < 1e-8);
  CHECK(proper_time_defect(tf) < 1e-6);  // finite-difference limited estimate
}

TEST_CASE("invariant mode amplitude") {
  Scenario sc = two_charge_scenario();
  PhaseSpacePoint pt = projected_start(sc);
  SUBCASE("definition") {
    CVec4d q = invariant_mode_amplitude(pt, 0);
    int mir = pt.field.mirror[0];
    for (int mu = 0; mu < 4; ++mu) {
      Cxd expect = pt.field.modes[0].Q[mu] +
                   metric_diag(mu) * pt.field.modes[std::size_t(mir)].P[mu];
      CHECK(abs(q[mu] - expect) < 1e-15);
    }
  }
  SUBCASE("constant along interacting trajectories") {
    IntegrateOptions opts;
    opts.step = 0.005;
    opts.tau1 = 1.0;
    Trajectory traj = integrate_covariant(pt, opts);
    double worst = 0.0;
    for (std::size_t m = 0; m < pt.field.size(); ++m) {
      CVec4d q0 = invariant_mode_amplitude(traj.front(), m);
      CVec4d q1 = invariant_mode_amplitude(traj.back(), m);
      for (int mu = 0; mu < 4; ++mu) worst = std::max(worst, abs(q1[mu] - q0[mu]));
    }
    CHECK(worst < 1e-8);
  }
  SUBCASE("missing mirror mode is an error") {
    PhaseSpacePoint bad;
    FieldMode m;
    m.k = {{0.3, 0.1, 0, 0}};
    bad.field.modes.push_back(m);
    bad.field.mirror = {-1};
    CHECK_THROWS_AS(invariant_mode_amplitude(bad, 0), MissingMirrorModeError);
  }
}

TEST_CASE("boundary split: outgoing amplitudes mirror the incoming drift") {
  Scenario sc = two_charge_scenario();
  PhaseSpacePoint start = projected_start(sc);
  // incoming free field: coordinates prescribed (zero), momenta carry the field
  for (auto& m : start.field.modes) m.Q = CVec4d{};
  IntegrateOptions opts;
  opts.step = 0.005;
  opts.tau1 = 1.0;
  opts.drift_bound = 1e-5;
  Trajectory traj = integrate_covariant(start, opts);
  const PhaseSpacePoint& fin = traj.back();
  for (std::size_t m = 0; m < fin.field.size(); ++m) {
    int mir = fin.field.mirror[m];
    for (int mu = 0; mu < 4; ++mu) {
      Cxd dy = fin.field.modes[m].Q[mu] - start.field.modes[m].Q[mu];
      Cxd dp = fin.field.modes[std::size_t(mir)].P[mu] - start.field.modes[std::size_t(mir)].P[mu];
      CHECK(abs(metric_diag(mu) * dp + dy) < 1e-10);
    }
  }
}

TEST_CASE("reparametrization") {
  Scenario sc = two_charge_scenario();
  PhaseSpacePoint start = projected_start(sc);
  IntegrateOptions opts;
  opts.step = 0.002;
  opts.tau1 = 1.0;
  Trajectory traj = integrate_covariant(start, opts);

  SUBCASE("identity and affine relabels") {
    Trajectory same = reparametrize(traj, [](double t) { return t; });
    CHECK(same.samples.size() == traj.samples.size());
    Trajectory twice = reparametrize(traj, [](double t) { return 2 * t; });
    CHECK(twice.samples.back().tau == doctest::Approx(2.0 * traj.samples.back().tau));
    for (std::size_t s = 0; s < traj.samples.size(); ++s)
      for (int mu = 0; mu < 4; ++mu)
        CHECK(twice.samples[s].point.particles[0].x[mu] ==
              traj.samples[s].point.particles[0].x[mu]);
  }
  SUBCASE("non-monotone maps are rejected") {
    CHECK_THROWS_AS(reparametrize(traj, [](double t) { return -t; }), ValidationError);
  }
  SUBCASE("re-run with transformed multipliers lands on the same world lines") {
    auto F = [](double t) { return t + 0.1 * std::sin(t); };
    auto Fprime = [](double t) { return 1.0 + 0.1 * std::cos(t); };
    // invert F by Newton iteration
    auto Finv = [&](double s) {
      double t = s;
      for (int it = 0; it < 60; ++it) t -= (F(t) - s) / Fprime(t);
      return t;
    };
    IntegrateOptions o2;
    o2.step = 0.002;
    o2.tau0 = F(0.0);
    o2.tau1 = F(1.0);
    o2.gauge_scale = [&](double s) { return 1.0 / Fprime(Finv(s)); };
    Trajectory t2 = integrate_covariant(start, o2);
    double worst = 0.0;
    for (double s : {0.2, 0.5, 0.8}) {
      FourVector a = interp_particle_x(traj, 0, Finv(s));
      FourVector b = interp_particle_x(t2, 0, s);
      for (int mu = 0; mu < 4; ++mu) worst = std::max(worst, std::abs(a[mu] - b[mu]));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("trajectory csv export") {
  Scenario sc = two_charge_scenario();
  PhaseSpacePoint start = projected_start(sc);
  IntegrateOptions opts;
  opts.step = 0.02;
  opts.tau1 = 0.1;
  Trajectory traj = integrate_covariant(start, opts);
  write_trajectory_csv(traj, "/tmp/relforms_test_traj", true);
  std::ifstream csv("/tmp/relforms_test_traj.csv");
  CHECK(csv.good());
  std::string line;
  std::getline(csv, line);
  CHECK(line.find(',') != std::string::npos);
  std::ifstream man("/tmp/relforms_test_traj.manifest.json");
  CHECK(man.good());
}
