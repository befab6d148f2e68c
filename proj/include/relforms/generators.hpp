#pragma once

#include <array>
#include <vector>

#include "relforms/phase_space.hpp"

namespace relforms {

// Which expression assembles the ten values.
enum class GeneratorBasis {
  General,          // any form of dynamics; constraint terms built from grad g
  Instant,          // instant-form specialization
  InstantOnShell,   // instant form with the time momentum eliminated on-shell
};

struct GeneratorSet {
  CVec4d P{};                               // P_nu, covariant components
  std::array<std::array<Cxd, 4>, 4> M{};    // M^{alpha beta}, contravariant, antisymmetric
  GeneratorBasis basis = GeneratorBasis::General;

  Cxd P_upper(int mu) const { return metric_diag(mu) * P[mu]; }
  double scale() const;
};

template <class T>
struct GenValues {
  std::array<Cx<T>, 4> P{};
  std::array<std::array<Cx<T>, 4>, 4> M{};
};

namespace detail {

// Index-axis first-derivative of the rescaled mode coordinate, chained through
// the frame map when the lattice lives on transformed wavevectors.
template <class T>
struct FieldWorkspace {
  std::vector<CVec4<T>> Qt, Pt;                 // sqrt(w)-rescaled amplitudes
  std::array<std::vector<CVec4<T>>, 4> dQt;     // index-axis stencil of Qt
  bool has_grid = false;

  void build(const TPoint<T>& pt) {
    const std::size_t n = pt.modes.size();
    Qt.resize(n);
    Pt.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
      double s = std::sqrt(pt.modes[m].weight);
      for (int mu = 0; mu < 4; ++mu) {
        Qt[m][mu] = pt.modes[m].Q[mu] * s;
        Pt[m][mu] = pt.modes[m].P[mu] * s;
      }
    }
    has_grid = pt.geom && pt.geom->grid && pt.geom->grid->total == int(n);
    if (!has_grid) return;
    const Grid& g = *pt.geom->grid;
    for (int d = 0; d < 4; ++d) {
      dQt[std::size_t(d)].assign(n, CVec4<T>{});
      for (int m = 0; m < g.total; ++m) {
        auto idx = g.unflatten(m);
        const Stencil& st = g.stencils[std::size_t(d)][std::size_t(idx[std::size_t(d)])];
        CVec4<T> acc{};
        for (std::size_t s = 0; s < st.idx.size(); ++s) {
          auto nidx = idx;
          nidx[std::size_t(d)] = st.idx[s];
          int nm = g.flatten(nidx);
          double wgt = st.w[s];
          for (int mu = 0; mu < 4; ++mu) acc[mu] += Qt[std::size_t(nm)][mu] * wgt;
        }
        dQt[std::size_t(d)][std::size_t(m)] = acc;
      }
    }
  }

  // d Qt / d k_beta at mode m (kmap chains the grid axes to the k components)
  CVec4<T> dk(const TPoint<T>& pt, std::size_t m, int beta) const {
    CVec4<T> out{};
    if (!has_grid) return out;
    const Mat4& a = pt.geom->kmap;
    for (int d = 0; d < 4; ++d) {
      double c = a(beta, d);
      if (c == 0.0) continue;
      for (int mu = 0; mu < 4; ++mu) out[mu] += dQt[std::size_t(d)][m][mu] * c;
    }
    return out;
  }
};

}  // namespace detail

// Field contributions shared by every basis: the translation bilinear
// -i sum k_nu Pt.Qt and the rotation bilinear with its wavevector-derivative
// term, accumulated into (P, M).
template <class T>
void accumulate_field_generators(const TPoint<T>& pt, GenValues<T>& out) {
  detail::FieldWorkspace<T> ws;
  ws.build(pt);
  const Cx<T> mi = Cx<T>(T(0), T(-1));
  for (std::size_t m = 0; m < pt.modes.size(); ++m) {
    const FourVector& k = pt.modes[m].k;
    Cx<T> pq{};
    for (int b = 0; b < 4; ++b) pq += ws.Pt[m][b] * ws.Qt[m][b];
    for (int nu = 0; nu < 4; ++nu) out.P[std::size_t(nu)] += mi * (pq * k[nu]);

    // sigma part: Pt^b Qt^a - Pt^a Qt^b
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        Cx<T> pa_up = metric_diag(a) * ws.Pt[m][a];
        Cx<T> pb_up = metric_diag(b) * ws.Pt[m][b];
        Cx<T> add = pb_up * ws.Qt[m][a] - pa_up * ws.Qt[m][b];
        out.M[std::size_t(a)][std::size_t(b)] += add;
        out.M[std::size_t(b)][std::size_t(a)] -= add;
      }
  }
  if (ws.has_grid) {
    for (std::size_t m = 0; m < pt.modes.size(); ++m) {
      FourVector k_up = flip_index(pt.modes[m].k);
      std::array<CVec4<T>, 4> dk;
      for (int b = 0; b < 4; ++b) dk[std::size_t(b)] = ws.dk(pt, m, b);
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          Cx<T> add{};
          for (int g = 0; g < 4; ++g)
            add += ws.Pt[m][g] * (dk[std::size_t(a)][g] * k_up[b] - dk[std::size_t(b)][g] * k_up[a]);
          out.M[std::size_t(a)][std::size_t(b)] += add;
          out.M[std::size_t(b)][std::size_t(a)] -= add;
        }
    }
  }
}

// The ten generator values for any form of dynamics. Constraint terms carry
// the shared denominator 2 pi.grad g; a vanishing denominator means the world
// line grazes the surface family.
template <class T>
GenValues<T> eval_generators_general(const TPoint<T>& pt, const FormOfDynamics& form) {
  GenValues<T> out{};
  accumulate_field_generators(pt, out);
  for (std::size_t j = 0; j < pt.particles.size(); ++j) {
    const auto& ps = pt.particles[j];
    for (int nu = 0; nu < 4; ++nu) out.P[std::size_t(nu)] += Cx<T>(ps.p[nu]);
    Vec4<T> p_up = flip_index(ps.p);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        Cx<T> add = Cx<T>(ps.x[a] * p_up[b] - ps.x[b] * p_up[a]);
        out.M[std::size_t(a)][std::size_t(b)] += add;
        out.M[std::size_t(b)][std::size_t(a)] -= add;
      }

    Vec4<T> grad = form.grad(ps.x);          // lower index
    Vec4<T> grad_up = flip_index(grad);
    CVec4<T> pi_up = kinetic_momentum_upper(pt, j);
    Cx<T> denom{};
    for (int a = 0; a < 4; ++a) denom += pi_up[a] * grad[a];
    denom = denom * 2.0;
    if (abs(value_of(denom)) < 1e-14)
      throw GrazingWorldlineError("multiplier denominator vanished (world line tangent to surface family)");
    Cx<T> phi = constraint_value(pt, j);
    Cx<T> phi_over = phi / denom;
    for (int nu = 0; nu < 4; ++nu) out.P[std::size_t(nu)] -= phi_over * grad[nu];
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        Cx<T> add = phi_over * (ps.x[a] * grad_up[b] - ps.x[b] * grad_up[a]);
        out.M[std::size_t(a)][std::size_t(b)] -= add;
        out.M[std::size_t(b)][std::size_t(a)] += add;
      }
  }
  return out;
}

// Instant-form specialization written out directly (grad g = delta^0).
template <class T>
GenValues<T> eval_generators_instant(const TPoint<T>& pt) {
  GenValues<T> out{};
  accumulate_field_generators(pt, out);
  for (std::size_t j = 0; j < pt.particles.size(); ++j) {
    const auto& ps = pt.particles[j];
    for (int nu = 0; nu < 4; ++nu) out.P[std::size_t(nu)] += Cx<T>(ps.p[nu]);
    Vec4<T> p_up = flip_index(ps.p);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        Cx<T> add = Cx<T>(ps.x[a] * p_up[b] - ps.x[b] * p_up[a]);
        out.M[std::size_t(a)][std::size_t(b)] += add;
        out.M[std::size_t(b)][std::size_t(a)] -= add;
      }
    CVec4<T> pi_up = kinetic_momentum_upper(pt, j);
    Cx<T> denom = pi_up[0] * 2.0;
    if (abs(value_of(denom)) < 1e-14)
      throw GrazingWorldlineError("vanishing kinetic energy in instant-form constraint term");
    Cx<T> phi_over = constraint_value(pt, j) / denom;
    out.P[0] -= phi_over;
    for (int a = 1; a < 4; ++a) {
      Cx<T> add = phi_over * ps.x[a];
      out.M[std::size_t(a)][0] -= add;
      out.M[0][std::size_t(a)] += add;
    }
  }
  return out;
}

// Instant form with p^0 eliminated by the positive-energy constraint root;
// the particle energy becomes e A^0 + sqrt((p - e A)^2 + m^2).
template <class T>
GenValues<T> eval_generators_instant_onshell(const TPoint<T>& pt) {
  GenValues<T> out{};
  accumulate_field_generators(pt, out);
  for (std::size_t j = 0; j < pt.particles.size(); ++j) {
    const auto& ps = pt.particles[j];
    CVec4<T> a = vector_potential(pt, ps.x);
    Cx<T> s = Cx<T>(T(ps.mass * ps.mass));
    for (int i = 1; i < 4; ++i) {
      Cx<T> pi_up = Cx<T>(-ps.p[i]) - ps.charge * a[i];  // spatial contravariant
      s += pi_up * pi_up;
    }
    Cx<T> energy = ps.charge * a[0] + sqrt(s);
    out.P[0] += energy;
    for (int nu = 1; nu < 4; ++nu) out.P[std::size_t(nu)] += Cx<T>(ps.p[nu]);
    Vec4<T> p_up = flip_index(ps.p);
    for (int aa = 1; aa < 4; ++aa)
      for (int bb = aa + 1; bb < 4; ++bb) {
        Cx<T> add = Cx<T>(ps.x[aa] * p_up[bb] - ps.x[bb] * p_up[aa]);
        out.M[std::size_t(aa)][std::size_t(bb)] += add;
        out.M[std::size_t(bb)][std::size_t(aa)] -= add;
      }
    // boosts with p^0 replaced by the energy root
    for (int aa = 1; aa < 4; ++aa) {
      Cx<T> add = ps.x[aa] * energy - Cx<T>(ps.x[0] * p_up[aa]);
      out.M[std::size_t(aa)][0] += add;
      out.M[0][std::size_t(aa)] -= add;
    }
  }
  return out;
}

GeneratorSet generators_general(const PhaseSpacePoint& pt, const FormOfDynamics& form);
GeneratorSet generators_instant(const PhaseSpacePoint& pt);
GeneratorSet generators_instant_onshell(const PhaseSpacePoint& pt);

// Gradients of all ten generators with respect to every canonical coordinate
// (forward-mode duals; finite differences for custom forms).
struct GenGradients {
  CoordLayout lay;
  GeneratorSet value;
  // per coordinate: derivative of P_nu and M^{alpha beta}
  std::vector<std::array<Cxd, 4>> dP;
  std::vector<std::array<std::array<Cxd, 4>, 4>> dM;
};

GenGradients generator_gradients(const PhaseSpacePoint& pt, const FormOfDynamics& form,
                                 GeneratorBasis basis, bool force_fd = false);

// Dirac strong equation for a single particle: the square of
// A^2 (p.p - m^2) / (2 p.q); zero on-shell, quadratic in the residual.
double strong_equation_value(const ParticleState& ps, double A);

}  // namespace relforms
