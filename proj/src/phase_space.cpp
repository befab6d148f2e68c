#include "relforms/phase_space.hpp"

namespace relforms {

void seed_coordinate(TPoint<Dual>& pt, const CoordLayout& lay, std::size_t coord) {
  std::size_t block = coord / 8;
  int slot = int(coord % 8);
  if (block < lay.n_particles) {
    auto& ps = pt.particles[block];
    if (slot < 4) ps.x[slot].d = 1.0;
    else ps.p[slot - 4].d = 1.0;
  } else {
    auto& m = pt.modes[block - lay.n_particles];
    double s = 1.0 / std::sqrt(m.weight);
    if (slot < 4) m.Q[slot].re.d = s;
    else m.P[slot - 4].re.d = s;
  }
}

CVec4d vector_potential(const PhaseSpacePoint& pt, const FourVector& x) {
  CVec4d out{};
  for (const auto& m : pt.field.modes) {
    double cnorm = m.weight / mode_norm(m.k);
    double phase = contract(m.k, x);
    Cxd ep = cis(phase);
    Cxd em = conj(ep);
    for (int mu = 0; mu < 4; ++mu) {
      Cxd pmu_up = (mu == 0 ? m.P[mu] : -m.P[mu]);
      out[mu] += cnorm * (m.Q[mu] * ep + pmu_up * em);
    }
  }
  return out;
}

std::array<CVec4d, 4> vector_potential_gradient(const PhaseSpacePoint& pt, const FourVector& x) {
  std::array<CVec4d, 4> grad{};  // grad[nu][mu] = dA^mu/dx^nu
  for (const auto& m : pt.field.modes) {
    double cnorm = m.weight / mode_norm(m.k);
    double phase = contract(m.k, x);
    Cxd iep = Cxd(0.0, 1.0) * cis(phase);
    Cxd iem = conj(iep);  // -i e^{-i phase}
    for (int nu = 0; nu < 4; ++nu) {
      double knu = m.k[nu];
      for (int mu = 0; mu < 4; ++mu) {
        Cxd pmu_up = (mu == 0 ? m.P[mu] : -m.P[mu]);
        grad[std::size_t(nu)][mu] += (cnorm * knu) * (m.Q[mu] * iep + pmu_up * iem);
      }
    }
  }
  return grad;
}

double constraint_residual(const PhaseSpacePoint& pt, std::size_t j) {
  const auto& ps = pt.particles[j];
  FourVector a = re_vec(vector_potential(pt, ps.x));
  FourVector pi_lo;
  for (int mu = 0; mu < 4; ++mu) {
    double a_lo = metric_diag(mu) * a[mu];
    pi_lo[mu] = ps.p[mu] - ps.charge * a_lo;
  }
  FourVector pi_up = flip_index(pi_lo);
  return contract(pi_lo, pi_up) - ps.mass * ps.mass;
}

PhaseSpacePoint project_to_constraints(const PhaseSpacePoint& pt, const FormOfDynamics& form) {
  PhaseSpacePoint out = pt;
  for (auto& ps : out.particles) {
    // position onto the g = 0 surface by solving for x^0
    switch (form.kind) {
      case FormOfDynamics::Kind::Instant:
        ps.x[0] = 0.0;
        break;
      case FormOfDynamics::Kind::LightCone:
      case FormOfDynamics::Kind::Hyperboloid: {
        double r2 = ps.x[1] * ps.x[1] + ps.x[2] * ps.x[2] + ps.x[3] * ps.x[3];
        double target = r2 + (form.kind == FormOfDynamics::Kind::Hyperboloid ? form.A * form.A : 0.0);
        double root = std::sqrt(target);
        ps.x[0] = (ps.x[0] < 0.0) ? -root : root;  // root nearest the current sign
        break;
      }
      case FormOfDynamics::Kind::Custom: {
        // bисection on x^0 around the current value
        double lo = ps.x[0] - 10.0, hi = ps.x[0] + 10.0;
        auto eval = [&](double t) {
          FourVector q = ps.x;
          q[0] = t;
          return form.g(q);
        };
        double flo = eval(lo), fhi = eval(hi);
        if (flo * fhi > 0.0) throw NoRealRootError("custom form: no x^0 bracketing the surface");
        for (int it = 0; it < 200; ++it) {
          double mid = 0.5 * (lo + hi);
          double fm = eval(mid);
          if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
          } else {
            lo = mid;
            flo = fm;
          }
        }
        ps.x[0] = 0.5 * (lo + hi);
        break;
      }
    }
  }
  // momenta: positive-energy root of the mass shell at the projected positions
  for (auto& ps : out.particles) {
    FourVector a = re_vec(vector_potential(out, ps.x));
    double s = ps.mass * ps.mass;
    for (int i = 1; i < 4; ++i) {
      double pi_i = ps.p[i] - ps.charge * (-a[i]);  // covariant spatial pi
      s += pi_i * pi_i;
    }
    if (s < 0.0) throw NoRealRootError("mass-shell root is complex");
    ps.p[0] = ps.charge * a[0] + std::sqrt(s);
  }
  return out;
}

}  // namespace relforms
