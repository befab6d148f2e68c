#pragma once

#include "relforms/minkowski.hpp"

namespace relforms {

// A tau-dependent Poincare frame: a(tau) = R(theta0 + w_r tau) * B(eta0 + w_b tau),
// z(tau) = z0 + zlin tau + zsin sin(freq tau) (- tau on the time component when
// `clock` is set). All derivatives are closed-form; nothing is differenced.
struct FramePath {
  int rot_axis = 3;
  double rot_angle0 = 0.0, rot_rate = 0.0;
  int boost_axis = 1;
  double boost_rap0 = 0.0, boost_rate = 0.0;
  FourVector z0{}, zlin{}, zsin{};
  double zsin_freq = 0.0;
  bool clock = false;  // z^0 picks up -tau

  Mat4 a(double tau) const;
  Mat4 adot(double tau) const;
  FourVector z(double tau) const;
  FourVector zdot(double tau) const;

  static FramePath statics() { return {}; }
  static FramePath instant_clock() {
    FramePath f;
    f.clock = true;
    return f;
  }
  static FramePath rotation(double rate, int axis, double angle0 = 0.0) {
    FramePath f;
    f.rot_axis = axis;
    f.rot_rate = rate;
    f.rot_angle0 = angle0;
    return f;
  }
  static FramePath boost(double rate, int axis, double rap0 = 0.0) {
    FramePath f;
    f.boost_axis = axis;
    f.boost_rate = rate;
    f.boost_rap0 = rap0;
    return f;
  }
};

// Mixed-index angular velocity w^beta_gamma = adot^beta_mu (a^{-1})^mu_gamma.
Mat4 angular_velocity_mixed(const FramePath& frame, double tau);

// Covariant components w_{alpha beta}; antisymmetric by pseudo-orthogonality.
AntisymTensor angular_velocity(const FramePath& frame, double tau);

inline Mat4 lower_first_index(const Mat4& mixed) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = metric_diag(i) * mixed(i, j);
  return r;
}

inline Mat4 raise_both(const Mat4& lower) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = metric_diag(i) * metric_diag(j) * lower(i, j);
  return r;
}

// zdot_R^nu = zdot^nu - w^nu_beta z^beta, the translation velocity seen from
// the rotating frame.
FourVector rotating_translation_velocity(const FramePath& frame, double tau);

// Same quantity assembled as a^nu_beta d/dtau(a_gamma^beta z^gamma); the two
// routes must agree.
FourVector rotating_translation_velocity_alt(const FramePath& frame, double tau);

}  // namespace relforms
