#include "relforms/dynamics.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "relforms/frame_transform.hpp"

namespace relforms {

double multiplier_covariant(const FourVector& xdot, double mass) {
  double s = minkowski_dot(xdot, xdot);
  if (s <= 0.0) throw NonTimelikeVelocityError("world-line tangent is not timelike");
  return std::sqrt(s) / (2.0 * mass);
}

double hamiltonian_dirac(const PhaseSpacePoint& pt, const MultiplierSet& v) {
  double h = 0.0;
  for (std::size_t j = 0; j < pt.particles.size(); ++j) h += v[j] * constraint_residual(pt, j);
  return h;
}

PhaseDot interaction_flow(const PhaseSpacePoint& pt, const MultiplierSet& v) {
  const std::size_t n = pt.particles.size();
  PhaseDot out;
  out.dx.assign(n, {});
  out.dp.assign(n, {});
  out.dQ.assign(pt.field.size(), {});
  out.dP.assign(pt.field.size(), {});

  std::vector<FourVector> xdot_up(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& ps = pt.particles[j];
    FourVector a = re_vec(vector_potential(pt, ps.x));
    FourVector pi_lo;
    for (int mu = 0; mu < 4; ++mu) pi_lo[mu] = ps.p[mu] - ps.charge * metric_diag(mu) * a[mu];
    FourVector pi_up = flip_index(pi_lo);
    xdot_up[j] = 2.0 * v[j] * pi_up;
    out.dx[j] = xdot_up[j];

    // dp_mu/dtau = 2 v e pi^alpha dA_alpha/dx^mu
    auto grad = vector_potential_gradient(pt, ps.x);  // grad[nu][mu] = dA^mu/dx^nu
    for (int mu = 0; mu < 4; ++mu) {
      double s = 0.0;
      for (int al = 0; al < 4; ++al)
        s += pi_up[al] * metric_diag(al) * grad[std::size_t(mu)][al].re;
      out.dp[j][mu] = 2.0 * v[j] * ps.charge * s;
    }
  }

  for (std::size_t m = 0; m < pt.field.size(); ++m) {
    const auto& fm = pt.field.modes[m];
    double ninv = 1.0 / mode_norm(fm.k);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& ps = pt.particles[j];
      if (ps.charge == 0.0) continue;
      double phase = contract(fm.k, ps.x);
      Cxd em = cis(-phase);
      Cxd ep = conj(em);
      FourVector xdot_lo = flip_index(xdot_up[j]);
      for (int mu = 0; mu < 4; ++mu) {
        out.dQ[m][mu] += (-ps.charge * ninv) * (xdot_up[j][mu] * em);
        out.dP[m][mu] += (ps.charge * ninv) * (xdot_lo[mu] * ep);
      }
    }
  }
  return out;
}

MultiplierSet multipliers_for(const PhaseSpacePoint& pt, const IntegrateOptions& opts, double tau) {
  MultiplierSet v(pt.particles.size());
  if (!opts.form) {
    double scale = opts.gauge_scale ? opts.gauge_scale(tau) : 1.0;
    for (std::size_t j = 0; j < pt.particles.size(); ++j)
      v[j] = scale / (2.0 * pt.particles[j].mass);
    return v;
  }
  // surface-preserving gauge evaluated in the moving-frame variables
  TransformedPoint tp = canonical_map_forward(pt, opts.frame.a(tau), opts.frame.z(tau));
  FourVector zdot = opts.frame.zdot(tau);
  AntisymTensor w = angular_velocity(opts.frame, tau);
  FourVector z = opts.frame.z(tau);
  return multiplier_form(tp, *opts.form, zdot, w, z);
}

namespace detail {

// flat state vector: particles (x, p), then modes (Re Q, Im Q, Re P, Im P)
std::vector<double> pack_state(const PhaseSpacePoint& pt) {
  std::vector<double> s;
  s.reserve(8 * pt.particles.size() + 16 * pt.field.size());
  for (const auto& ps : pt.particles) {
    for (int i = 0; i < 4; ++i) s.push_back(ps.x[i]);
    for (int i = 0; i < 4; ++i) s.push_back(ps.p[i]);
  }
  for (const auto& m : pt.field.modes) {
    for (int i = 0; i < 4; ++i) {
      s.push_back(m.Q[i].re);
      s.push_back(m.Q[i].im);
    }
    for (int i = 0; i < 4; ++i) {
      s.push_back(m.P[i].re);
      s.push_back(m.P[i].im);
    }
  }
  return s;
}

void unpack_state(PhaseSpacePoint& pt, const std::vector<double>& s) {
  std::size_t c = 0;
  for (auto& ps : pt.particles) {
    for (int i = 0; i < 4; ++i) ps.x[i] = s[c++];
    for (int i = 0; i < 4; ++i) ps.p[i] = s[c++];
  }
  for (auto& m : pt.field.modes) {
    for (int i = 0; i < 4; ++i) {
      m.Q[i].re = s[c++];
      m.Q[i].im = s[c++];
    }
    for (int i = 0; i < 4; ++i) {
      m.P[i].re = s[c++];
      m.P[i].im = s[c++];
    }
  }
}

std::vector<double> pack_dot(const PhaseDot& d) {
  std::vector<double> s;
  s.reserve(8 * d.dx.size() + 16 * d.dQ.size());
  for (std::size_t j = 0; j < d.dx.size(); ++j) {
    for (int i = 0; i < 4; ++i) s.push_back(d.dx[j][i]);
    for (int i = 0; i < 4; ++i) s.push_back(d.dp[j][i]);
  }
  for (std::size_t m = 0; m < d.dQ.size(); ++m) {
    for (int i = 0; i < 4; ++i) {
      s.push_back(d.dQ[m][i].re);
      s.push_back(d.dQ[m][i].im);
    }
    for (int i = 0; i < 4; ++i) {
      s.push_back(d.dP[m][i].re);
      s.push_back(d.dP[m][i].im);
    }
  }
  return s;
}

std::vector<double> rk4_step(const Deriv& f, double tau, const std::vector<double>& y, double h) {
  auto add = [](const std::vector<double>& a, const std::vector<double>& b, double s) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  std::vector<double> k1 = f(tau, y);
  std::vector<double> k2 = f(tau + h / 2, add(y, k1, h / 2));
  std::vector<double> k3 = f(tau + h / 2, add(y, k2, h / 2));
  std::vector<double> k4 = f(tau + h, add(y, k3, h));
  std::vector<double> r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    r[i] = y[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return r;
}

}  // namespace detail

namespace {

using detail::Deriv;

Trajectory run_fixed_rk4(const PhaseSpacePoint& start, const IntegrateOptions& opts,
                         const Deriv& f, const char* tag) {
  Trajectory traj;
  traj.parametrization = tag;
  PhaseSpacePoint pt = start;
  std::vector<double> y = detail::pack_state(pt);
  double span = opts.tau1 - opts.tau0;
  int nsteps = std::max(1, int(std::llround(span / opts.step)));
  double h = span / nsteps;
  double tau = opts.tau0;
  traj.samples.push_back({tau, pt});
  double base_resid = 0.0;
  for (std::size_t j = 0; j < pt.particles.size(); ++j)
    base_resid = std::max(base_resid, std::abs(constraint_residual(pt, j)));
  for (int s = 0; s < nsteps; ++s) {
    y = detail::rk4_step(f, tau, y, h);
    tau = opts.tau0 + (s + 1) * h;
    detail::unpack_state(pt, y);
    double resid = 0.0;
    for (std::size_t j = 0; j < pt.particles.size(); ++j)
      resid = std::max(resid, std::abs(constraint_residual(pt, j)));
    traj.max_constraint_drift = std::max(traj.max_constraint_drift, std::abs(resid - base_resid));
    if (traj.max_constraint_drift > opts.drift_bound)
      throw IntegrationError("constraint drift " + std::to_string(traj.max_constraint_drift) +
                             " exceeded the configured bound");
    if ((s + 1) % opts.record_every == 0 || s + 1 == nsteps) traj.samples.push_back({tau, pt});
  }
  return traj;
}

}  // namespace

Trajectory integrate_covariant(const PhaseSpacePoint& start, const IntegrateOptions& opts) {
  PhaseSpacePoint shape = start;
  Deriv f = [&shape, &opts](double tau, const std::vector<double>& y) {
    detail::unpack_state(shape, y);
    MultiplierSet v = multipliers_for(shape, opts, tau);
    return detail::pack_dot(interaction_flow(shape, v));
  };
  return run_fixed_rk4(start, opts, f, opts.form ? "form-gauge" : "proper-time");
}

namespace {

// oracle state: per particle (x, u = dx/dtau), then the mode amplitudes
struct OracleState {
  std::vector<FourVector> x, u;
  std::vector<CVec4d> Q, P;
};

}  // namespace

Trajectory oracle_lorentz_force(const PhaseSpacePoint& start, const IntegrateOptions& opts) {
  const std::size_t n = start.particles.size();
  // initial four-velocity from the kinetic momentum: u = pi / m
  PhaseSpacePoint pt = start;
  std::vector<double> y;
  {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& ps = pt.particles[j];
      FourVector a = re_vec(vector_potential(pt, ps.x));
      FourVector pi_lo;
      for (int mu = 0; mu < 4; ++mu) pi_lo[mu] = ps.p[mu] - ps.charge * metric_diag(mu) * a[mu];
      FourVector u = (1.0 / ps.mass) * flip_index(pi_lo);
      for (int i = 0; i < 4; ++i) y.push_back(ps.x[i]);
      for (int i = 0; i < 4; ++i) y.push_back(u[i]);
    }
    for (const auto& m : pt.field.modes) {
      for (int i = 0; i < 4; ++i) {
        y.push_back(m.Q[i].re);
        y.push_back(m.Q[i].im);
      }
      for (int i = 0; i < 4; ++i) {
        y.push_back(m.P[i].re);
        y.push_back(m.P[i].im);
      }
    }
  }

  PhaseSpacePoint shape = start;  // reused buffer for field evaluation
  auto unpack_oracle = [&](const std::vector<double>& s) {
    OracleState os;
    os.x.resize(n);
    os.u.resize(n);
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      for (int i = 0; i < 4; ++i) os.x[j][i] = s[c++];
      for (int i = 0; i < 4; ++i) os.u[j][i] = s[c++];
    }
    os.Q.resize(shape.field.size());
    os.P.resize(shape.field.size());
    for (std::size_t m = 0; m < shape.field.size(); ++m) {
      for (int i = 0; i < 4; ++i) {
        os.Q[m][i].re = s[c++];
        os.Q[m][i].im = s[c++];
      }
      for (int i = 0; i < 4; ++i) {
        os.P[m][i].re = s[c++];
        os.P[m][i].im = s[c++];
      }
    }
    return os;
  };

  Deriv f = [&](double, const std::vector<double>& s) {
    OracleState os = unpack_oracle(s);
    for (std::size_t m = 0; m < shape.field.size(); ++m) {
      shape.field.modes[m].Q = os.Q[m];
      shape.field.modes[m].P = os.P[m];
    }
    std::vector<double> dot;
    dot.reserve(s.size());
    for (std::size_t j = 0; j < n; ++j) {
      const auto& ps = start.particles[j];
      auto grad = vector_potential_gradient(shape, os.x[j]);  // grad[nu][mu] = dA^mu/dx^nu
      // F_{alpha beta} u^beta with F = dA_beta/dx^alpha - dA_alpha/dx^beta
      FourVector udot_lo{};
      for (int al = 0; al < 4; ++al) {
        double s2 = 0.0;
        for (int be = 0; be < 4; ++be) {
          double dAb_da = metric_diag(be) * grad[std::size_t(al)][be].re;
          double dAa_db = metric_diag(al) * grad[std::size_t(be)][al].re;
          s2 += (dAb_da - dAa_db) * os.u[j][be];
        }
        udot_lo[al] = ps.charge / ps.mass * s2;
      }
      FourVector udot = flip_index(udot_lo);
      for (int i = 0; i < 4; ++i) dot.push_back(os.u[j][i]);
      for (int i = 0; i < 4; ++i) dot.push_back(udot[i]);
    }
    for (std::size_t m = 0; m < shape.field.size(); ++m) {
      const auto& fm = shape.field.modes[m];
      double ninv = 1.0 / mode_norm(fm.k);
      CVec4d dQ{}, dP{};
      for (std::size_t j = 0; j < n; ++j) {
        const auto& ps = start.particles[j];
        if (ps.charge == 0.0) continue;
        double phase = contract(fm.k, os.x[j]);
        Cxd em = cis(-phase);
        Cxd ep = conj(em);
        FourVector u_lo = flip_index(os.u[j]);
        for (int mu = 0; mu < 4; ++mu) {
          dQ[mu] += (-ps.charge * ninv) * (os.u[j][mu] * em);
          dP[mu] += (ps.charge * ninv) * (u_lo[mu] * ep);
        }
      }
      for (int i = 0; i < 4; ++i) {
        dot.push_back(dQ[i].re);
        dot.push_back(dQ[i].im);
      }
      for (int i = 0; i < 4; ++i) {
        dot.push_back(dP[i].re);
        dot.push_back(dP[i].im);
      }
    }
    return dot;
  };

  Trajectory traj;
  traj.parametrization = "oracle-proper-time";
  double span = opts.tau1 - opts.tau0;
  int nsteps = std::max(1, int(std::llround(span / opts.step)));
  double h = span / nsteps;
  double tau = opts.tau0;

  auto to_point = [&](const std::vector<double>& s) {
    OracleState os = unpack_oracle(s);
    PhaseSpacePoint out = start;
    for (std::size_t m = 0; m < out.field.size(); ++m) {
      out.field.modes[m].Q = os.Q[m];
      out.field.modes[m].P = os.P[m];
    }
    // canonical momentum p = m u_lower + e A_lower
    for (std::size_t j = 0; j < n; ++j) {
      out.particles[j].x = os.x[j];
      FourVector a = re_vec(vector_potential(out, os.x[j]));
      FourVector u_lo = flip_index(os.u[j]);
      for (int mu = 0; mu < 4; ++mu)
        out.particles[j].p[mu] = start.particles[j].mass * u_lo[mu] +
                                 start.particles[j].charge * metric_diag(mu) * a[mu];
    }
    return out;
  };

  traj.samples.push_back({tau, to_point(y)});
  for (int s = 0; s < nsteps; ++s) {
    y = detail::rk4_step(f, tau, y, h);
    tau = opts.tau0 + (s + 1) * h;
    if ((s + 1) % opts.record_every == 0 || s + 1 == nsteps)
      traj.samples.push_back({tau, to_point(y)});
  }
  return traj;
}

double proper_time_defect(const Trajectory& traj) {
  // |u.u - 1| from finite differences of the stored world line
  double worst = 0.0;
  for (std::size_t s = 1; s + 1 < traj.samples.size(); ++s) {
    double dt = traj.samples[s + 1].tau - traj.samples[s - 1].tau;
    for (std::size_t j = 0; j < traj.samples[s].point.particles.size(); ++j) {
      FourVector u;
      for (int i = 0; i < 4; ++i)
        u[i] = (traj.samples[s + 1].point.particles[j].x[i] -
                traj.samples[s - 1].point.particles[j].x[i]) /
               dt;
      worst = std::max(worst, std::abs(minkowski_dot(u, u) - 1.0));
    }
  }
  return worst;
}

CVec4d invariant_mode_amplitude(const PhaseSpacePoint& pt, std::size_t mode) {
  if (pt.field.mirror.empty() || pt.field.mirror[mode] < 0)
    throw MissingMirrorModeError("lattice has no mode at -k");
  const auto& self = pt.field.modes[mode];
  const auto& mir = pt.field.modes[std::size_t(pt.field.mirror[mode])];
  CVec4d out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = self.Q[mu] + metric_diag(mu) * mir.P[mu];
  return out;
}

Trajectory reparametrize(const Trajectory& traj, const std::function<double(double)>& F) {
  Trajectory out = traj;
  double prev = -std::numeric_limits<double>::infinity();
  for (auto& s : out.samples) {
    double t = F(s.tau);
    if (!(t > prev)) throw ValidationError("reparametrization map is not strictly monotone");
    prev = t;
    s.tau = t;
  }
  out.parametrization = traj.parametrization + "+relabel";
  return out;
}

FourVector interp_particle_x(const Trajectory& traj, std::size_t j, double tau) {
  const auto& s = traj.samples;
  if (s.size() < 2) throw ValidationError("trajectory too short to interpolate");
  std::size_t hi = 1;
  while (hi + 1 < s.size() && s[hi].tau < tau) ++hi;
  std::size_t i0 = (hi >= 2) ? hi - 2 : 0;
  std::size_t count = std::min<std::size_t>(4, s.size() - i0);
  if (i0 + 4 > s.size()) i0 = s.size() - count;
  FourVector out{};
  for (std::size_t a = i0; a < i0 + count; ++a) {
    double w = 1.0;
    for (std::size_t b = i0; b < i0 + count; ++b)
      if (b != a) w *= (tau - s[b].tau) / (s[a].tau - s[b].tau);
    for (int i = 0; i < 4; ++i) out[i] += w * s[a].point.particles[j].x[i];
  }
  return out;
}

FourVector world_line_at_time(const Trajectory& traj, std::size_t j, double t) {
  const auto& s = traj.samples;
  auto time_of = [&](std::size_t i) { return s[i].point.particles[j].x[0]; };
  double t0 = time_of(0), t1 = time_of(s.size() - 1);
  bool increasing = t1 > t0;
  double lo = s.front().tau, hi = s.back().tau;
  if ((increasing && (t < t0 || t > t1)) || (!increasing && (t > t0 || t < t1)))
    throw ValidationError("coordinate time outside the trajectory span");
  for (int it = 0; it < 120; ++it) {
    double mid = 0.5 * (lo + hi);
    double tm = interp_particle_x(traj, j, mid)[0];
    if ((tm < t) == increasing) lo = mid;
    else hi = mid;
  }
  return interp_particle_x(traj, j, 0.5 * (lo + hi));
}

double surface_intersection_tau(const Trajectory& traj, std::size_t j, const FormOfDynamics& form,
                                const FramePath& frame, double tau_prev) {
  auto value = [&](double tau) {
    FourVector x = interp_particle_x(traj, j, tau);
    FourVector q = apply(frame.a(tau), x) - frame.z(tau);
    return form.g(q);
  };
  double lo = traj.samples.front().tau, hi = traj.samples.back().tau;
  lo = std::max(lo, tau_prev);
  const int scan = 512;
  double prev_t = lo, prev_v = value(lo);
  double root_lo = 0, root_hi = 0;
  bool found = false;
  for (int i = 1; i <= scan; ++i) {
    double t = lo + (hi - lo) * i / scan;
    double v = value(t);
    if (t <= tau_prev) {
      prev_t = t;
      prev_v = v;
      continue;
    }
    if (prev_v == 0.0) {
      root_lo = root_hi = prev_t;
      found = true;
      break;
    }
    if (prev_v * v <= 0.0) {
      root_lo = prev_t;
      root_hi = t;
      found = true;
      break;
    }
    prev_t = t;
    prev_v = v;
  }
  if (!found) throw IntegrationError("no surface intersection after the given parameter");
  if (root_lo == root_hi) return root_lo;
  double flo = value(root_lo), fhi = value(root_hi);
  for (int it = 0; it < 200; ++it) {
    // secant proposal, safeguarded by bisection
    double mid = root_hi - fhi * (root_hi - root_lo) / (fhi - flo);
    if (!(mid > root_lo && mid < root_hi)) mid = 0.5 * (root_lo + root_hi);
    double fm = value(mid);
    if (std::abs(root_hi - root_lo) < 1e-14) break;
    if (flo * fm <= 0.0) {
      root_hi = mid;
      fhi = fm;
    } else {
      root_lo = mid;
      flo = fm;
    }
    if (std::abs(fm) < 1e-15) return mid;
  }
  return 0.5 * (root_lo + root_hi);
}

void write_trajectory_csv(const Trajectory& traj, const std::string& base_path, bool mode_norms) {
  std::ofstream csv(base_path + ".csv");
  if (!csv) throw IoError("cannot write " + base_path + ".csv");
  nlohmann::json manifest;
  std::vector<std::string> cols{"tau"};
  const auto& first = traj.samples.front().point;
  for (std::size_t j = 0; j < first.particles.size(); ++j)
    for (const char* base : {"x", "p"})
      for (int mu = 0; mu < 4; ++mu)
        cols.push_back(std::string(base) + std::to_string(j) + "_" + std::to_string(mu));
  if (mode_norms)
    for (std::size_t m = 0; m < first.field.size(); ++m) {
      cols.push_back("absQ" + std::to_string(m));
      cols.push_back("absP" + std::to_string(m));
    }
  manifest["columns"] = cols;
  manifest["rows"] = traj.samples.size();
  manifest["parametrization"] = traj.parametrization;

  csv.precision(17);
  for (const auto& s : traj.samples) {
    csv << s.tau;
    for (const auto& ps : s.point.particles) {
      for (int i = 0; i < 4; ++i) csv << ',' << ps.x[i];
      for (int i = 0; i < 4; ++i) csv << ',' << ps.p[i];
    }
    if (mode_norms)
      for (const auto& m : s.point.field.modes) {
        double q2 = 0, p2 = 0;
        for (int i = 0; i < 4; ++i) {
          q2 += norm2(m.Q[i]);
          p2 += norm2(m.P[i]);
        }
        csv << ',' << std::sqrt(q2) << ',' << std::sqrt(p2);
      }
    csv << '\n';
  }
  std::ofstream mf(base_path + ".manifest.json");
  if (!mf) throw IoError("cannot write " + base_path + ".manifest.json");
  mf << manifest.dump(2) << '\n';
}

}  // namespace relforms
