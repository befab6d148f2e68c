#pragma once

#include "relforms/dynamics.hpp"
#include "relforms/frame_path.hpp"
#include "relforms/generators.hpp"
#include "relforms/phase_space.hpp"

namespace relforms {

// Canonical map to the moving frame: q = a x - z, p = fraktur-p a, mode
// variables rotated with the e^{i k.z} phase, wavevectors carried along.
// The grid geometry is chained so wavevector derivatives stay exact.
TransformedPoint canonical_map_forward(const PhaseSpacePoint& old_pt, const Mat4& a,
                                       const FourVector& z);
PhaseSpacePoint canonical_map_backward(const TransformedPoint& new_pt, const Mat4& a,
                                       const FourVector& z);

// dF2/dtau expressed in the new variables: -zdot_R . P_kin - (1/2) w^{ab} M_kin,
// the constraint-term-free generator assembly.
double generating_function_rate(const PhaseSpacePoint& old_pt, const FramePath& frame, double tau);
Cxd generating_function_rate_c(const TransformedPoint& tp, const FramePath& frame, double tau);

// Surface-preserving Lagrange multipliers for the given form and frame motion.
MultiplierSet multiplier_form(const TransformedPoint& tp, const FormOfDynamics& form,
                              const FourVector& zdot, const AntisymTensor& w, const FourVector& z);

// Routhian value assembled from the full generator set:
// -zdot_R . P - (1/2) w^{alpha beta} M_{alpha beta}.
double routhian(const TransformedPoint& tp, const FormOfDynamics& form, const FramePath& frame,
                double tau);

// Hamilton flow of the Routhian in the new variables: interaction part with
// the surface-preserving multipliers plus the kinematic generator flow.
PhaseDot routhian_flow(const TransformedPoint& tp, const FormOfDynamics& form,
                       const FramePath& frame, double tau);

Trajectory integrate_routhian(const TransformedPoint& start, const FormOfDynamics& form,
                              const FramePath& frame, const IntegrateOptions& opts);

// Conserved combinations along Routhian trajectories: the rotated momentum
// a^beta_alpha P_beta and the rotated angular-momentum tensor including the
// translation shift.
FourVector conserved_momentum(const TransformedPoint& tp, const FormOfDynamics& form,
                              const FramePath& frame, double tau);
Mat4 conserved_angular_tensor(const TransformedPoint& tp, const FormOfDynamics& form,
                              const FramePath& frame, double tau);

struct ConservationReport {
  double momentum_drift = 0.0;  // per unit tau
  double angular_drift = 0.0;
  double g_drift = 0.0;  // surface constraint along the flow
  bool pass(double tol) const {
    return momentum_drift <= tol && angular_drift <= tol;
  }
};

ConservationReport conservation_check(const Trajectory& traj, const FormOfDynamics& form,
                                      const FramePath& frame);

}  // namespace relforms
