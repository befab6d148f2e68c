#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relforms/frame_path.hpp"
#include "relforms/phase_space.hpp"

namespace relforms {

using MultiplierSet = std::vector<double>;

// v_j = sqrt(xdot.xdot) / (2 m); requires a timelike tangent.
double multiplier_covariant(const FourVector& xdot, double mass);

// H = sum_j v_j * (pi.pi - m^2) with the real part of the potential.
double hamiltonian_dirac(const PhaseSpacePoint& pt, const MultiplierSet& v);

// Phase-space tangent in physical (unrescaled) variables.
struct PhaseDot {
  std::vector<FourVector> dx, dp;
  std::vector<CVec4d> dQ, dP;
};

// Hamilton equations of the generalized Hamiltonian: particle velocities
// 2 v pi, canonical forces through the potential gradient, and the mode
// source terms driven by the particle currents.
PhaseDot interaction_flow(const PhaseSpacePoint& pt, const MultiplierSet& v);

struct Trajectory {
  struct Sample {
    double tau;
    PhaseSpacePoint point;
  };
  std::vector<Sample> samples;
  std::string parametrization = "proper-time";
  double max_constraint_drift = 0.0;

  const PhaseSpacePoint& front() const { return samples.front().point; }
  const PhaseSpacePoint& back() const { return samples.back().point; }
};

struct IntegrateOptions {
  double step = 1e-2;
  double tau0 = 0.0;
  double tau1 = 1.0;
  double drift_bound = 1e-6;
  int record_every = 1;
  // multiplier gauge: proper time by default, scaled by gauge_scale(tau);
  // supplying a form switches to the surface-preserving multipliers.
  std::function<double(double)> gauge_scale;
  std::optional<FormOfDynamics> form;
  FramePath frame = FramePath::instant_clock();
};

MultiplierSet multipliers_for(const PhaseSpacePoint& pt, const IntegrateOptions& opts, double tau);

Trajectory integrate_covariant(const PhaseSpacePoint& start, const IntegrateOptions& opts);

// Independent second-order oracle: explicit integration of the Lorentz force
// equation with the field driven by direct quadrature of the currents.
Trajectory oracle_lorentz_force(const PhaseSpacePoint& start, const IntegrateOptions& opts);

// Worst deviation from unit proper-time normalization along an oracle run.
double proper_time_defect(const Trajectory& traj);

// q^mu_k = y^mu_k + p^mu_{-k}; requires the mirror mode to exist.
CVec4d invariant_mode_amplitude(const PhaseSpacePoint& pt, std::size_t mode);

// Relabel tau -> F(tau); world lines are unchanged as point sets.
Trajectory reparametrize(const Trajectory& traj, const std::function<double(double)>& F);

// 4-point Lagrange interpolation of particle positions along a trajectory.
FourVector interp_particle_x(const Trajectory& traj, std::size_t j, double tau);

// Position of particle j where its world line crosses coordinate time t
// (parametrization-free comparison of world lines as point sets).
FourVector world_line_at_time(const Trajectory& traj, std::size_t j, double t);

// Smallest root greater than tau_prev of s(tau) = g(a(tau) x_j(tau) - z(tau)),
// located by bracketed bisection refined with secant steps.
double surface_intersection_tau(const Trajectory& traj, std::size_t j, const FormOfDynamics& form,
                                const FramePath& frame, double tau_prev);

// CSV export: one row per sample (tau, per-particle x and p, optional mode
// amplitude norms) plus a JSON column manifest alongside.
void write_trajectory_csv(const Trajectory& traj, const std::string& base_path,
                          bool mode_norms = false);

namespace detail {

std::vector<double> pack_state(const PhaseSpacePoint& pt);
void unpack_state(PhaseSpacePoint& pt, const std::vector<double>& s);
std::vector<double> pack_dot(const PhaseDot& d);

using Deriv = std::function<std::vector<double>(double, const std::vector<double>&)>;
std::vector<double> rk4_step(const Deriv& f, double tau, const std::vector<double>& y, double h);

}  // namespace detail

}  // namespace relforms
