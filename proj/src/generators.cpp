#include "relforms/generators.hpp"

namespace relforms {

namespace {

GeneratorSet to_set(const GenValues<double>& v, GeneratorBasis basis) {
  GeneratorSet g;
  g.basis = basis;
  for (int nu = 0; nu < 4; ++nu) g.P[nu] = v.P[std::size_t(nu)];
  g.M = v.M;
  return g;
}

GenValues<double> eval_basis(const TPoint<double>& tp, const FormOfDynamics& form,
                             GeneratorBasis basis) {
  switch (basis) {
    case GeneratorBasis::General: return eval_generators_general(tp, form);
    case GeneratorBasis::Instant: return eval_generators_instant(tp);
    case GeneratorBasis::InstantOnShell: return eval_generators_instant_onshell(tp);
  }
  return {};
}

GenValues<Dual> eval_basis(const TPoint<Dual>& tp, const FormOfDynamics& form,
                           GeneratorBasis basis) {
  switch (basis) {
    case GeneratorBasis::General: return eval_generators_general(tp, form);
    case GeneratorBasis::Instant: return eval_generators_instant(tp);
    case GeneratorBasis::InstantOnShell: return eval_generators_instant_onshell(tp);
  }
  return {};
}

}  // namespace

double GeneratorSet::scale() const {
  double s = 1.0;
  for (int nu = 0; nu < 4; ++nu) s = std::max(s, abs(P[nu]));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s = std::max(s, abs(M[std::size_t(a)][std::size_t(b)]));
  return s;
}

GeneratorSet generators_general(const PhaseSpacePoint& pt, const FormOfDynamics& form) {
  return to_set(eval_generators_general(make_tpoint<double>(pt), form), GeneratorBasis::General);
}

GeneratorSet generators_instant(const PhaseSpacePoint& pt) {
  return to_set(eval_generators_instant(make_tpoint<double>(pt)), GeneratorBasis::Instant);
}

GeneratorSet generators_instant_onshell(const PhaseSpacePoint& pt) {
  return to_set(eval_generators_instant_onshell(make_tpoint<double>(pt)),
                GeneratorBasis::InstantOnShell);
}

GenGradients generator_gradients(const PhaseSpacePoint& pt, const FormOfDynamics& form,
                                 GeneratorBasis basis, bool force_fd) {
  GenGradients out;
  out.lay = layout_of(pt);
  out.value = to_set(eval_basis(make_tpoint<double>(pt), form, basis), basis);
  const std::size_t nc = out.lay.count();
  out.dP.assign(nc, {});
  out.dM.assign(nc, {});

  const bool use_fd = force_fd || form.kind == FormOfDynamics::Kind::Custom;
  if (!use_fd) {
    for (std::size_t c = 0; c < nc; ++c) {
      TPoint<Dual> tp = make_tpoint<Dual>(pt);
      seed_coordinate(tp, out.lay, c);
      GenValues<Dual> v = eval_basis(tp, form, basis);
      for (int nu = 0; nu < 4; ++nu) out.dP[c][std::size_t(nu)] = deriv_of(v.P[std::size_t(nu)]);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          out.dM[c][std::size_t(a)][std::size_t(b)] = deriv_of(v.M[std::size_t(a)][std::size_t(b)]);
    }
    return out;
  }

  // central finite differences with one Richardson level (relative step 1e-5)
  auto eval_at = [&](const PhaseSpacePoint& q) {
    return eval_basis(make_tpoint<double>(q), form, basis);
  };
  auto perturb = [&](std::size_t c, double delta) {
    PhaseSpacePoint q = pt;
    std::size_t block = c / 8;
    int slot = int(c % 8);
    if (block < q.particles.size()) {
      auto& ps = q.particles[block];
      if (slot < 4) ps.x[slot] += delta;
      else ps.p[slot - 4] += delta;
    } else {
      auto& m = q.field.modes[block - q.particles.size()];
      double s = delta / std::sqrt(m.weight);
      if (slot < 4) m.Q[slot].re += s;
      else m.P[slot - 4].re += s;
    }
    return q;
  };
  auto coord_value = [&](std::size_t c) {
    std::size_t block = c / 8;
    int slot = int(c % 8);
    if (block < pt.particles.size()) {
      const auto& ps = pt.particles[block];
      return slot < 4 ? ps.x[slot] : ps.p[slot - 4];
    }
    const auto& m = pt.field.modes[block - pt.particles.size()];
    double s = std::sqrt(m.weight);
    return (slot < 4 ? m.Q[slot].re : m.P[slot - 4].re) * s;
  };

  for (std::size_t c = 0; c < nc; ++c) {
    double h = 1e-5 * std::max(std::abs(coord_value(c)), 1.0);
    auto central = [&](double step) {
      GenValues<double> plus = eval_at(perturb(c, step));
      GenValues<double> minus = eval_at(perturb(c, -step));
      GenValues<double> d{};
      for (int nu = 0; nu < 4; ++nu)
        d.P[std::size_t(nu)] = (plus.P[std::size_t(nu)] - minus.P[std::size_t(nu)]) / (2.0 * step);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          d.M[std::size_t(a)][std::size_t(b)] =
              (plus.M[std::size_t(a)][std::size_t(b)] - minus.M[std::size_t(a)][std::size_t(b)]) / (2.0 * step);
      return d;
    };
    GenValues<double> d1 = central(h);
    GenValues<double> d2 = central(h / 2.0);
    for (int nu = 0; nu < 4; ++nu)
      out.dP[c][std::size_t(nu)] =
          (4.0 * d2.P[std::size_t(nu)] - d1.P[std::size_t(nu)]) * (1.0 / 3.0);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        out.dM[c][std::size_t(a)][std::size_t(b)] =
            (4.0 * d2.M[std::size_t(a)][std::size_t(b)] - d1.M[std::size_t(a)][std::size_t(b)]) * (1.0 / 3.0);
  }
  return out;
}

double strong_equation_value(const ParticleState& ps, double A) {
  FourVector p_up = flip_index(ps.p);
  double pq = contract(ps.p, ps.x);
  if (std::abs(pq) < 1e-14) throw ValidationError("degenerate p.q in strong equation");
  double resid = contract(ps.p, p_up) - ps.mass * ps.mass;
  double val = A * A * resid / (2.0 * pq);
  return val * val;
}

}  // namespace relforms
