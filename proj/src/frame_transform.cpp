#include "relforms/frame_transform.hpp"

#include <cmath>

namespace relforms {

TransformedPoint canonical_map_forward(const PhaseSpacePoint& old_pt, const Mat4& a,
                                       const FourVector& z) {
  if (pseudo_orthogonality_defect(a) > 1e-10)
    throw ValidationError("frame matrix is not pseudo-orthogonal");
  Mat4 ainv = minkowski_inverse(a);
  TransformedPoint out = old_pt;
  for (std::size_t j = 0; j < out.particles.size(); ++j) {
    const auto& ps = old_pt.particles[j];
    out.particles[j].x = apply(a, ps.x) - z;
    for (int nu = 0; nu < 4; ++nu) {
      double s = 0.0;
      for (int mu = 0; mu < 4; ++mu) s += ps.p[mu] * ainv(mu, nu);
      out.particles[j].p[nu] = s;
    }
  }
  for (std::size_t m = 0; m < out.field.size(); ++m) {
    const auto& fm = old_pt.field.modes[m];
    FourVector k;
    for (int nu = 0; nu < 4; ++nu) {
      double s = 0.0;
      for (int al = 0; al < 4; ++al) s += ainv(al, nu) * fm.k[al];
      k[nu] = s;
    }
    double phase = contract(k, z);
    Cxd ep = cis(phase);
    Cxd em = conj(ep);
    CVec4d q = apply(a, fm.Q);
    CVec4d p{};
    for (int be = 0; be < 4; ++be) {
      Cxd s{};
      for (int mu = 0; mu < 4; ++mu) s += fm.P[mu] * ainv(mu, be);
      p[be] = s * em;
    }
    out.field.modes[m].k = k;
    for (int mu = 0; mu < 4; ++mu) out.field.modes[m].Q[mu] = q[mu] * ep;
    out.field.modes[m].P = p;
  }
  out.field.kmap = a * old_pt.field.kmap;
  return out;
}

PhaseSpacePoint canonical_map_backward(const TransformedPoint& new_pt, const Mat4& a,
                                       const FourVector& z) {
  if (pseudo_orthogonality_defect(a) > 1e-10)
    throw ValidationError("frame matrix is not pseudo-orthogonal");
  Mat4 ainv = minkowski_inverse(a);
  PhaseSpacePoint out = new_pt;
  for (std::size_t j = 0; j < out.particles.size(); ++j) {
    const auto& ps = new_pt.particles[j];
    out.particles[j].x = apply(ainv, ps.x + z);
    for (int mu = 0; mu < 4; ++mu) {
      double s = 0.0;
      for (int nu = 0; nu < 4; ++nu) s += ps.p[nu] * a(nu, mu);
      out.particles[j].p[mu] = s;
    }
  }
  for (std::size_t m = 0; m < out.field.size(); ++m) {
    const auto& fm = new_pt.field.modes[m];
    double phase = contract(fm.k, z);
    Cxd ep = cis(phase);
    Cxd em = conj(ep);
    FourVector kappa;
    for (int al = 0; al < 4; ++al) {
      double s = 0.0;
      for (int nu = 0; nu < 4; ++nu) s += a(nu, al) * fm.k[nu];
      kappa[al] = s;
    }
    CVec4d y{};
    for (int mu = 0; mu < 4; ++mu) {
      Cxd s{};
      for (int be = 0; be < 4; ++be) s += Cxd(ainv(mu, be)) * fm.Q[be];
      y[mu] = s * em;
    }
    CVec4d p{};
    for (int mu = 0; mu < 4; ++mu) {
      Cxd s{};
      for (int be = 0; be < 4; ++be) s += fm.P[be] * a(be, mu);
      p[mu] = s * ep;
    }
    out.field.modes[m].k = kappa;
    out.field.modes[m].Q = y;
    out.field.modes[m].P = p;
  }
  out.field.kmap = minkowski_inverse(a) * new_pt.field.kmap;
  return out;
}

namespace {

GenValues<double> kinematic_generators(const TransformedPoint& tp) {
  TPoint<double> t = make_tpoint<double>(tp);
  GenValues<double> out{};
  accumulate_field_generators(t, out);
  for (const auto& ps : tp.particles) {
    for (int nu = 0; nu < 4; ++nu) out.P[std::size_t(nu)] += Cxd(ps.p[nu]);
    FourVector p_up = flip_index(ps.p);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        Cxd add = Cxd(ps.x[a] * p_up[b] - ps.x[b] * p_up[a]);
        out.M[std::size_t(a)][std::size_t(b)] += add;
        out.M[std::size_t(b)][std::size_t(a)] -= add;
      }
  }
  return out;
}

Cxd assemble_routhian(const GenValues<double>& gen, const FramePath& frame, double tau) {
  FourVector zr = rotating_translation_velocity(frame, tau);
  AntisymTensor w = angular_velocity(frame, tau);
  Cxd out{};
  for (int nu = 0; nu < 4; ++nu) out -= zr[nu] * gen.P[std::size_t(nu)];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      out -= 0.5 * w(a, b) * gen.M[std::size_t(a)][std::size_t(b)];
  return out;
}

}  // namespace

Cxd generating_function_rate_c(const TransformedPoint& tp, const FramePath& frame, double tau) {
  return assemble_routhian(kinematic_generators(tp), frame, tau);
}

double generating_function_rate(const PhaseSpacePoint& old_pt, const FramePath& frame, double tau) {
  TransformedPoint tp = canonical_map_forward(old_pt, frame.a(tau), frame.z(tau));
  return generating_function_rate_c(tp, frame, tau).re;
}

MultiplierSet multiplier_form(const TransformedPoint& tp, const FormOfDynamics& form,
                              const FourVector& zdot, const AntisymTensor& w, const FourVector& z) {
  MultiplierSet v(tp.particles.size());
  TPoint<double> t = make_tpoint<double>(tp);
  for (std::size_t j = 0; j < tp.particles.size(); ++j) {
    const auto& ps = tp.particles[j];
    FourVector grad = form.grad(ps.x);
    FourVector grad_up = flip_index(grad);
    FourVector pi_up = re_vec(kinetic_momentum_upper(t, j));
    double denom = 2.0 * contract(grad, pi_up);
    if (std::abs(denom) < 1e-12)
      throw GrazingWorldlineError("world line tangent to the surface family");
    double numer = contract(grad, zdot);
    for (int be = 0; be < 4; ++be)
      for (int ga = 0; ga < 4; ++ga) {
        if (w(be, ga) == 0.0) continue;
        double qb = ps.x[be] + z[be];
        double qg = ps.x[ga] + z[ga];
        numer += 0.5 * w(be, ga) * (qb * grad_up[ga] - qg * grad_up[be]);
      }
    v[j] = numer / denom;
  }
  return v;
}

double routhian(const TransformedPoint& tp, const FormOfDynamics& form, const FramePath& frame,
                double tau) {
  GenValues<double> gen = eval_generators_general(make_tpoint<double>(tp), form);
  return assemble_routhian(gen, frame, tau).re;
}

PhaseDot routhian_flow(const TransformedPoint& tp, const FormOfDynamics& form,
                       const FramePath& frame, double tau) {
  FourVector zdot = frame.zdot(tau);
  FourVector z = frame.z(tau);
  AntisymTensor w = angular_velocity(frame, tau);
  Mat4 w_mixed = angular_velocity_mixed(frame, tau);
  FourVector zr = rotating_translation_velocity(frame, tau);

  MultiplierSet v = multiplier_form(tp, form, zdot, w, z);
  PhaseDot out = interaction_flow(tp, v);

  // kinematic particle terms
  for (std::size_t j = 0; j < tp.particles.size(); ++j) {
    const auto& ps = tp.particles[j];
    for (int nu = 0; nu < 4; ++nu) {
      double s = -zdot[nu];
      for (int ga = 0; ga < 4; ++ga) s += w_mixed(nu, ga) * (ps.x[ga] + z[ga]);
      out.dx[j][nu] += s;
    }
    for (int ga = 0; ga < 4; ++ga) {
      double s = 0.0;
      for (int nu = 0; nu < 4; ++nu) s -= ps.p[nu] * w_mixed(nu, ga);
      out.dp[j][ga] += s;
    }
  }

  // kinematic field terms: phase rotation from the translation part and the
  // rotation generator acting on the mode data
  const std::size_t nm = tp.field.size();
  if (nm == 0) return out;
  const Grid* grid = tp.field.grid.get();
  const bool has_grid = grid && grid->total == int(nm);

  // index-axis stencil derivatives of Q and the transposed action on k^. P
  std::array<std::vector<CVec4d>, 4> dQ_axis;
  if (has_grid) {
    for (int d = 0; d < 4; ++d) dQ_axis[std::size_t(d)].assign(nm, CVec4d{});
    for (int m = 0; m < grid->total; ++m) {
      auto idx = grid->unflatten(m);
      for (int d = 0; d < 4; ++d) {
        const Stencil& st = grid->stencils[std::size_t(d)][std::size_t(idx[std::size_t(d)])];
        CVec4d acc{};
        for (std::size_t s = 0; s < st.idx.size(); ++s) {
          auto nidx = idx;
          nidx[std::size_t(d)] = st.idx[s];
          const auto& Q = tp.field.modes[std::size_t(grid->flatten(nidx))].Q;
          for (int mu = 0; mu < 4; ++mu) acc[mu] += Q[mu] * st.w[s];
        }
        dQ_axis[std::size_t(d)][std::size_t(m)] = acc;
      }
    }
  }

  for (std::size_t m = 0; m < nm; ++m) {
    const auto& fm = tp.field.modes[m];
    double zk = contract(fm.k, zr);
    Cxd iph = Cxd(0.0, zk);
    for (int mu = 0; mu < 4; ++mu) {
      out.dQ[m][mu] += iph * fm.Q[mu];
      out.dP[m][mu] -= iph * fm.P[mu];
    }
    FourVector k_up = flip_index(fm.k);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        double wab = w(a, b);
        if (wab == 0.0) continue;
        // sigma action on Q: (sigma Q)^g = g^{gb} Q^a - g^{ga} Q^b
        CVec4d sq{};
        sq[b] += metric_diag(b) * fm.Q[a];
        sq[a] -= metric_diag(a) * fm.Q[b];
        // sigma^T action on P: at g=a: +P^b ; at g=b: -P^a
        CVec4d stp{};
        stp[a] += metric_diag(b) * fm.P[b];
        stp[b] -= metric_diag(a) * fm.P[a];
        CVec4d lq{};
        if (has_grid) {
          const Mat4& km = tp.field.kmap;
          for (int d = 0; d < 4; ++d) {
            double ca = km(a, d), cb = km(b, d);
            for (int mu = 0; mu < 4; ++mu)
              lq[mu] += (k_up[b] * ca - k_up[a] * cb) * dQ_axis[std::size_t(d)][m][mu];
          }
        }
        // the unordered (a,b) pair appears twice in the half-contraction
        for (int mu = 0; mu < 4; ++mu) {
          out.dQ[m][mu] -= wab * (sq[mu] + lq[mu]);
          out.dP[m][mu] += wab * stp[mu];
        }
      }
  }

  // transpose of the wavevector-derivative term acting on P, chained through kmap
  if (has_grid) {
    const Mat4& km = tp.field.kmap;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        double wab = w(a, b);
        if (wab == 0.0) continue;
        for (int m = 0; m < grid->total; ++m) {
          auto idx = grid->unflatten(m);
          FourVector k_up = flip_index(tp.field.modes[std::size_t(m)].k);
          for (int d = 0; d < 4; ++d) {
            const Stencil& st = grid->stencils[std::size_t(d)][std::size_t(idx[std::size_t(d)])];
            double ca = km(a, d), cb = km(b, d);
            double coeff = ca * k_up[b] - cb * k_up[a];
            if (coeff == 0.0) continue;
            for (std::size_t s = 0; s < st.idx.size(); ++s) {
              auto nidx = idx;
              nidx[std::size_t(d)] = st.idx[s];
              int t = grid->flatten(nidx);
              for (int mu = 0; mu < 4; ++mu)
                out.dP[std::size_t(t)][mu] +=
                    (st.w[s] * wab * coeff) * tp.field.modes[std::size_t(m)].P[mu];
            }
          }
        }
      }
  }
  return out;
}

Trajectory integrate_routhian(const TransformedPoint& start, const FormOfDynamics& form,
                              const FramePath& frame, const IntegrateOptions& opts) {
  PhaseSpacePoint shape = start;
  detail::Deriv f = [&](double tau, const std::vector<double>& y) {
    detail::unpack_state(shape, y);
    return detail::pack_dot(routhian_flow(shape, form, frame, tau));
  };
  Trajectory traj;
  traj.parametrization = "routhian";
  std::vector<double> y = detail::pack_state(start);
  double span = opts.tau1 - opts.tau0;
  int nsteps = std::max(1, int(std::llround(span / opts.step)));
  double h = span / nsteps;
  double tau = opts.tau0;
  PhaseSpacePoint pt = start;
  traj.samples.push_back({tau, pt});
  for (int s = 0; s < nsteps; ++s) {
    y = detail::rk4_step(f, tau, y, h);
    tau = opts.tau0 + (s + 1) * h;
    detail::unpack_state(pt, y);
    if ((s + 1) % opts.record_every == 0 || s + 1 == nsteps) traj.samples.push_back({tau, pt});
  }
  return traj;
}

FourVector conserved_momentum(const TransformedPoint& tp, const FormOfDynamics& form,
                              const FramePath& frame, double tau) {
  GeneratorSet gen = generators_general(tp, form);
  Mat4 a = frame.a(tau);
  FourVector out{};
  for (int al = 0; al < 4; ++al) {
    double s = 0.0;
    for (int be = 0; be < 4; ++be) s += a(be, al) * gen.P[be].re;
    out[al] = s;
  }
  return out;
}

Mat4 conserved_angular_tensor(const TransformedPoint& tp, const FormOfDynamics& form,
                              const FramePath& frame, double tau) {
  GeneratorSet gen = generators_general(tp, form);
  Mat4 a = frame.a(tau);
  FourVector z = frame.z(tau);
  FourVector z_lo = flip_index(z);
  Mat4 n;  // N_{mu beta} = M_{mu beta} + z_mu P_beta - z_beta P_mu (all lower)
  for (int mu = 0; mu < 4; ++mu)
    for (int be = 0; be < 4; ++be) {
      double m_lo = metric_diag(mu) * metric_diag(be) * gen.M[std::size_t(mu)][std::size_t(be)].re;
      n(mu, be) = m_lo + z_lo[mu] * gen.P[be].re - z_lo[be] * gen.P[mu].re;
    }
  Mat4 out;
  for (int ga = 0; ga < 4; ++ga)
    for (int de = 0; de < 4; ++de) {
      double s = 0.0;
      for (int mu = 0; mu < 4; ++mu)
        for (int be = 0; be < 4; ++be) s += a(mu, ga) * a(be, de) * n(mu, be);
      out(ga, de) = s;
    }
  return out;
}

ConservationReport conservation_check(const Trajectory& traj, const FormOfDynamics& form,
                                      const FramePath& frame) {
  ConservationReport rep;
  if (traj.samples.size() < 2) return rep;
  double span = traj.samples.back().tau - traj.samples.front().tau;
  FourVector p0 = conserved_momentum(traj.samples.front().point, form, frame,
                                     traj.samples.front().tau);
  Mat4 t0 = conserved_angular_tensor(traj.samples.front().point, form, frame,
                                     traj.samples.front().tau);
  for (const auto& s : traj.samples) {
    FourVector p = conserved_momentum(s.point, form, frame, s.tau);
    Mat4 t = conserved_angular_tensor(s.point, form, frame, s.tau);
    for (int i = 0; i < 4; ++i) rep.momentum_drift = std::max(rep.momentum_drift, std::abs(p[i] - p0[i]));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        rep.angular_drift = std::max(rep.angular_drift, std::abs(t(i, j) - t0(i, j)));
    for (std::size_t j = 0; j < s.point.particles.size(); ++j)
      rep.g_drift = std::max(rep.g_drift, std::abs(form.g(s.point.particles[j].x)));
  }
  rep.momentum_drift /= std::max(span, 1e-30);
  rep.angular_drift /= std::max(span, 1e-30);
  return rep;
}

}  // namespace relforms
