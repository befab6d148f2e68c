#include "relforms/frame_path.hpp"

namespace relforms {

Mat4 FramePath::a(double tau) const {
  Mat4 r = make_rotation(rot_angle0 + rot_rate * tau, rot_axis);
  Mat4 b = make_boost(boost_rap0 + boost_rate * tau, boost_axis);
  return r * b;
}

Mat4 FramePath::adot(double tau) const {
  Mat4 r = make_rotation(rot_angle0 + rot_rate * tau, rot_axis);
  Mat4 b = make_boost(boost_rap0 + boost_rate * tau, boost_axis);
  Mat4 rdot = rot_rate * make_rotation_deriv(rot_angle0 + rot_rate * tau, rot_axis);
  Mat4 bdot = boost_rate * make_boost_deriv(boost_rap0 + boost_rate * tau, boost_axis);
  return rdot * b + r * bdot;
}

FourVector FramePath::z(double tau) const {
  FourVector r = z0;
  for (int i = 0; i < 4; ++i) r[i] += zlin[i] * tau + zsin[i] * std::sin(zsin_freq * tau);
  if (clock) r[0] -= tau;
  return r;
}

FourVector FramePath::zdot(double tau) const {
  FourVector r = zlin;
  for (int i = 0; i < 4; ++i) r[i] += zsin[i] * zsin_freq * std::cos(zsin_freq * tau);
  if (clock) r[0] -= 1.0;
  return r;
}

Mat4 angular_velocity_mixed(const FramePath& frame, double tau) {
  return frame.adot(tau) * minkowski_inverse(frame.a(tau));
}

AntisymTensor angular_velocity(const FramePath& frame, double tau) {
  return lower_first_index(angular_velocity_mixed(frame, tau));
}

FourVector rotating_translation_velocity(const FramePath& frame, double tau) {
  Mat4 w = angular_velocity_mixed(frame, tau);
  FourVector zd = frame.zdot(tau);
  FourVector wz = apply(w, frame.z(tau));
  return zd - wz;
}

FourVector rotating_translation_velocity_alt(const FramePath& frame, double tau) {
  Mat4 a = frame.a(tau);
  Mat4 ad = frame.adot(tau);
  // d/dtau a^{-1} = g adot^T g
  Mat4 ainv_dot;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      ainv_dot(i, j) = metric_diag(i) * ad(j, i) * metric_diag(j);
  FourVector w = apply(ainv_dot, frame.z(tau)) + apply(minkowski_inverse(a), frame.zdot(tau));
  return apply(a, w);
}

}  // namespace relforms
