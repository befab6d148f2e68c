#include "relforms/reduced3d.hpp"

#include "relforms/errors.hpp"
#include "relforms/scenario.hpp"

namespace relforms {

ReducedPoint build_reduced_point(const ReducedLatticeSpec& spec,
                                 const std::vector<ReducedParticle>& particles) {
  ReducedPoint pt;
  pt.particles = particles;
  std::vector<int> dims(spec.dims.begin(), spec.dims.end());
  std::vector<double> spacing(spec.spacing.begin(), spec.spacing.end());
  std::vector<double> offsets(3);
  for (int d = 0; d < 3; ++d)
    offsets[std::size_t(d)] = (dims[std::size_t(d)] % 2 == 0) ? 0.0 : spec.offset;
  auto grid = std::make_shared<Grid>(Grid::regular(dims, spacing, offsets));
  pt.grid = grid;
  pt.spacing = spacing[0];

  Rng rng(spec.seed * 0x2545f4914f6cdd1dull + 99);
  pt.modes.resize(std::size_t(grid->total));
  for (int m = 0; m < grid->total; ++m) {
    auto idx = grid->unflatten(m);
    ReducedMode rm;
    double w = 1.0, k2 = 0.0;
    for (int d = 0; d < 3; ++d) {
      rm.kvec[std::size_t(d)] = grid->coords[std::size_t(d)][std::size_t(idx[std::size_t(d)])];
      k2 += rm.kvec[std::size_t(d)] * rm.kvec[std::size_t(d)];
      w *= spacing[std::size_t(d)];
    }
    rm.kmag = std::sqrt(k2);
    if (rm.kmag < 1e-12) throw ValidationError("reduced lattice mode at k = 0");
    rm.weight = w;
    for (int mu = 0; mu < 4; ++mu) {
      rm.A[mu] = Cxd(spec.amplitude * rng.uniform(-1, 1), spec.amplitude * rng.uniform(-1, 1));
      if (spec.conjugate_pair) {
        rm.Adag[mu] = conj(rm.A[mu]);
      } else {
        rm.Adag[mu] =
            Cxd(spec.amplitude * rng.uniform(-1, 1), spec.amplitude * rng.uniform(-1, 1));
      }
    }
    pt.modes[std::size_t(m)] = rm;
  }
  return pt;
}

Cxd reduced_bracket(int mu, std::size_t k, int nu, std::size_t kprime, const ReducedPoint& pt) {
  if (k != kprime || mu != nu) {
    if (k != kprime) return {};
    if (mu != nu) return {};  // g^{mu nu} is diagonal
  }
  double g = metric_diag(mu);
  double w = pt.modes[k].weight;
  return Cxd(0.0, -g / (4.0 * M_PI * M_PI * w));
}

void seed_reduced(TReducedPoint<Dual>& pt, const ReducedLayout& lay, std::size_t coord) {
  if (coord < 6 * lay.n_particles) {
    std::size_t j = coord / 6;
    int slot = int(coord % 6);
    if (slot < 3) pt.particles[j].q[std::size_t(slot)].d = 1.0;
    else pt.particles[j].p[std::size_t(slot - 3)].d = 1.0;
    return;
  }
  std::size_t c = coord - 6 * lay.n_particles;
  std::size_t m = c / 8;
  int slot = int(c % 8);
  if (slot < 4) pt.modes[m].A[slot].re.d = 1.0;
  else pt.modes[m].Adag[slot - 4].re.d = 1.0;
}

namespace {

// metric contraction Adag . X = Adag^0 X^0 - sum_a Adag^a X^a
template <class T>
Cx<T> dot_g(const CVec4<T>& a, const CVec4<T>& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

template <class T>
std::array<std::vector<CVec4<T>>, 3> stencil_dA(const TReducedPoint<T>& pt) {
  std::array<std::vector<CVec4<T>>, 3> out;
  const Grid* grid = pt.geom ? pt.geom->grid.get() : nullptr;
  if (!grid || grid->total != int(pt.modes.size())) return out;
  for (int d = 0; d < 3; ++d) {
    out[std::size_t(d)].assign(pt.modes.size(), CVec4<T>{});
    for (int m = 0; m < grid->total; ++m) {
      auto idx = grid->unflatten(m);
      const Stencil& st = grid->stencils[std::size_t(d)][std::size_t(idx[std::size_t(d)])];
      CVec4<T> acc{};
      for (std::size_t s = 0; s < st.idx.size(); ++s) {
        auto nidx = idx;
        nidx[std::size_t(d)] = st.idx[s];
        const auto& A = pt.modes[std::size_t(grid->flatten(nidx))].A;
        for (int mu = 0; mu < 4; ++mu) acc[mu] += A[mu] * st.w[s];
      }
      out[std::size_t(d)][std::size_t(m)] = acc;
    }
  }
  return out;
}

}  // namespace

template <class T>
GenValues<T> eval_generators_reduced(const TReducedPoint<T>& pt) {
  GenValues<T> out{};
  const double c0 = 4.0 * M_PI * M_PI;
  const Cx<T> mi = Cx<T>(T(0), T(-1));

  // particles
  std::vector<Cx<T>> energy(pt.particles.size());
  for (std::size_t j = 0; j < pt.particles.size(); ++j) {
    const auto& ps = pt.particles[j];
    CVec4<T> pot = reduced_potential(pt, ps.q);
    Cx<T> s = Cx<T>(T(ps.mass * ps.mass));
    for (int a = 0; a < 3; ++a) {
      Cx<T> pi = Cx<T>(ps.p[std::size_t(a)]) - ps.charge * pot[a + 1];
      s += pi * pi;
    }
    energy[j] = ps.charge * pot[0] + sqrt(s);
    out.P[0] += energy[j];
    for (int a = 0; a < 3; ++a) out.P[std::size_t(a + 1)] -= Cx<T>(ps.p[std::size_t(a)]);
    for (int a = 1; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        Cx<T> add = Cx<T>(ps.q[std::size_t(a - 1)] * ps.p[std::size_t(b - 1)] -
                          ps.q[std::size_t(b - 1)] * ps.p[std::size_t(a - 1)]);
        out.M[std::size_t(a)][std::size_t(b)] += add;
        out.M[std::size_t(b)][std::size_t(a)] -= add;
      }
    for (int a = 1; a < 4; ++a) {
      Cx<T> add = ps.q[std::size_t(a - 1)] * energy[j];
      out.M[std::size_t(a)][0] += add;
      out.M[0][std::size_t(a)] -= add;
    }
  }

  // field bilinears
  auto dA = stencil_dA(pt);
  const bool has_grid = !dA[0].empty();
  for (std::size_t m = 0; m < pt.modes.size(); ++m) {
    const auto& fm = pt.modes[m];
    Cx<T> aad = dot_g(fm.Adag, fm.A);
    out.P[0] += Cx<T>(T(-c0 * fm.weight * fm.kmag)) * aad;
    for (int a = 0; a < 3; ++a)
      out.P[std::size_t(a + 1)] -=
          Cx<T>(T(-c0 * fm.weight * fm.kvec[std::size_t(a)])) * aad;  // P_a = -P^a

    if (has_grid) {
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          // orbital k^a d^b - k^b d^a plus the spatial spin part
          Cx<T> orb{};
          for (int mu = 0; mu < 4; ++mu) {
            Cx<T> term = fm.kvec[std::size_t(a)] * dA[std::size_t(b)][m][mu] -
                         fm.kvec[std::size_t(b)] * dA[std::size_t(a)][m][mu];
            orb += (mu == 0 ? fm.Adag[mu] : -fm.Adag[mu]) * term;
          }
          Cx<T> spin = fm.Adag[b + 1] * fm.A[a + 1] - fm.Adag[a + 1] * fm.A[b + 1];
          Cx<T> add = (mi * (c0 * fm.weight) * (-1.0)) * (orb + spin);
          out.M[std::size_t(a + 1)][std::size_t(b + 1)] += add;
          out.M[std::size_t(b + 1)][std::size_t(a + 1)] -= add;
        }
      for (int a = 0; a < 3; ++a) {
        // boost: -k d^a - k^a/2 on A plus the time-space spin mix
        Cx<T> orb{};
        for (int mu = 0; mu < 4; ++mu) {
          Cx<T> term = Cx<T>(T(-fm.kmag)) * dA[std::size_t(a)][m][mu] +
                       Cx<T>(T(-0.5 * fm.kvec[std::size_t(a)])) * fm.A[mu];
          orb += (mu == 0 ? fm.Adag[mu] : -fm.Adag[mu]) * term;
        }
        Cx<T> spin = fm.Adag[0] * fm.A[a + 1] - fm.Adag[a + 1] * fm.A[0];
        Cx<T> add = (mi * (c0 * fm.weight) * (-1.0)) * (orb + spin);
        out.M[std::size_t(a + 1)][0] += add;
        out.M[0][std::size_t(a + 1)] -= add;
      }
    }
  }
  return out;
}

template GenValues<double> eval_generators_reduced(const TReducedPoint<double>&);
template GenValues<Dual> eval_generators_reduced(const TReducedPoint<Dual>&);

GeneratorSet generators_reduced(const ReducedPoint& pt) {
  GenValues<double> v = eval_generators_reduced(make_treduced<double>(pt));
  GeneratorSet g;
  g.basis = GeneratorBasis::InstantOnShell;
  for (int nu = 0; nu < 4; ++nu) g.P[nu] = v.P[std::size_t(nu)];
  g.M = v.M;
  return g;
}

ReducedGradients reduced_gradients(const ReducedPoint& pt) {
  ReducedGradients out;
  out.lay = reduced_layout(pt);
  out.value = generators_reduced(pt);
  const std::size_t nc = out.lay.count();
  out.dP.assign(nc, {});
  out.dM.assign(nc, {});
  for (std::size_t c = 0; c < nc; ++c) {
    TReducedPoint<Dual> tp = make_treduced<Dual>(pt);
    seed_reduced(tp, out.lay, c);
    GenValues<Dual> v = eval_generators_reduced(tp);
    for (int nu = 0; nu < 4; ++nu) out.dP[c][std::size_t(nu)] = deriv_of(v.P[std::size_t(nu)]);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        out.dM[c][std::size_t(a)][std::size_t(b)] = deriv_of(v.M[std::size_t(a)][std::size_t(b)]);
  }
  return out;
}

namespace {

Cxd rgrad(const ReducedGradients& g, const GeneratorId& id, std::size_t coord) {
  if (id.type == GeneratorId::Type::P) return g.dP[coord][std::size_t(id.a)];
  return g.dM[coord][std::size_t(id.a)][std::size_t(id.b)];
}

}  // namespace

Cxd reduced_bracket_of(const ReducedGradients& g, const ReducedPoint& pt, const GeneratorId& f,
                       const GeneratorId& h) {
  const ReducedLayout& lay = g.lay;
  const double c0 = 1.0 / (4.0 * M_PI * M_PI);
  Cxd out{};
  for (std::size_t j = 0; j < lay.n_particles; ++j)
    for (int a = 0; a < 3; ++a) {
      std::size_t iq = lay.part_q(j, a), ip = lay.part_p(j, a);
      out += rgrad(g, f, iq) * rgrad(g, h, ip) - rgrad(g, f, ip) * rgrad(g, h, iq);
    }
  for (std::size_t m = 0; m < lay.n_modes; ++m)
    for (int mu = 0; mu < 4; ++mu) {
      std::size_t ia = lay.mode_a(m, mu), id = lay.mode_ad(m, mu);
      Cxd c = Cxd(0.0, -metric_diag(mu) * c0 / pt.modes[m].weight);
      out += c * (rgrad(g, f, ia) * rgrad(g, h, id) - rgrad(g, f, id) * rgrad(g, h, ia));
    }
  return out;
}

BracketReport verify_reduced_lie_algebra(const ReducedPoint& pt, double tol) {
  ReducedGradients grads = reduced_gradients(pt);
  double scale = grads.value.scale();
  BracketReport rep;
  rep.kind = "reduced-lie-algebra-closure";
  rep.generator_scale = scale;
  rep.lattice_spacing = pt.spacing;
  for (const auto& id : closure_identities(-1.0)) {
    Cxd lhs = reduced_bracket_of(grads, pt, id.lhs1, id.lhs2);
    Cxd rhs{};
    for (const auto& t : id.rhs) rhs += t.coeff * generator_value(grads.value, t.gen);
    rep.add(id.name, abs(lhs - rhs) / scale, tol);
  }
  return rep;
}

BracketReport verify_reduced_currie(const ReducedPoint& pt, double tol, double tol_instant) {
  ReducedGradients grads = reduced_gradients(pt);
  const ReducedLayout& lay = grads.lay;
  BracketReport rep;
  rep.kind = "reduced-currie-conditions";
  rep.generator_scale = grads.value.scale();
  rep.lattice_spacing = pt.spacing;

  TReducedPoint<double> tp = make_treduced<double>(pt);
  for (std::size_t j = 0; j < pt.particles.size(); ++j) {
    const auto& ps = pt.particles[j];
    CVec4d pot = reduced_potential(tp, std::array<double, 3>{ps.q[0], ps.q[1], ps.q[2]});
    Cxd s = Cxd(ps.mass * ps.mass, 0.0);
    CVec4d pi{};
    for (int a = 0; a < 3; ++a) {
      pi[a + 1] = Cxd(ps.p[std::size_t(a)]) - ps.charge * pot[a + 1];
      s += pi[a + 1] * pi[a + 1];
    }
    Cxd root = sqrt(s);

    for (int a = 0; a < 3; ++a) {
      std::size_t ip = lay.part_p(j, a);
      // [q^a_j, P^b] = delta^{ab} (P^b = -P_b as stored)
      for (int b = 0; b < 3; ++b) {
        Cxd lhs = -1.0 * grads.dP[ip][std::size_t(b + 1)];
        Cxd expect = Cxd(a == b ? 1.0 : 0.0, 0.0);
        rep.add("instant3d j" + std::to_string(j) + " q" + std::to_string(a + 1) + " P" +
                    std::to_string(b + 1),
                abs(lhs - expect), tol_instant);
      }
      // [q^a_j, P^0] = pi^a / sqrt(...) evaluated independently
      Cxd lhs0 = grads.dP[ip][0];
      Cxd expect0 = pi[a + 1] / root;
      rep.add("velocity j" + std::to_string(j) + " q" + std::to_string(a + 1), abs(lhs0 - expect0),
              tol);
      // rotation contraction: [q^a, J^{b1 b2}] = q^{b1} delta^{a b2} - q^{b2} delta^{a b1}
      for (int b1 = 1; b1 < 4; ++b1)
        for (int b2 = b1 + 1; b2 < 4; ++b2) {
          Cxd lhs = grads.dM[ip][std::size_t(b1)][std::size_t(b2)];
          Cxd expect{};
          if (a + 1 == b2) expect += Cxd(ps.q[std::size_t(b1 - 1)]);
          if (a + 1 == b1) expect -= Cxd(ps.q[std::size_t(b2 - 1)]);
          rep.add("rotation j" + std::to_string(j) + " q" + std::to_string(a + 1) + " M" +
                      std::to_string(b1) + std::to_string(b2),
                  abs(lhs - expect), tol);
        }
      // boost contraction: [q^a, K^b] = q^b [q^a, P^0]
      for (int b = 0; b < 3; ++b) {
        Cxd lhs = grads.dM[ip][std::size_t(b + 1)][0];
        Cxd expect = ps.q[std::size_t(b)] * lhs0;
        rep.add("boost j" + std::to_string(j) + " q" + std::to_string(a + 1) + " K" +
                    std::to_string(b + 1),
                abs(lhs - expect), tol);
      }
    }
  }
  return rep;
}

}  // namespace relforms
