#include "relforms/minkowski.hpp"

#include "relforms/errors.hpp"

namespace relforms {

Mat4 make_boost(double rapidity, int axis) {
  if (axis < 1 || axis > 3) throw ValidationError("boost axis must be 1..3");
  Mat4 a = Mat4::identity();
  double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  a(0, 0) = ch;
  a(axis, axis) = ch;
  a(0, axis) = sh;
  a(axis, 0) = sh;
  return a;
}

Mat4 make_boost_deriv(double rapidity, int axis) {
  if (axis < 1 || axis > 3) throw ValidationError("boost axis must be 1..3");
  Mat4 a;
  double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  a(0, 0) = sh;
  a(axis, axis) = sh;
  a(0, axis) = ch;
  a(axis, 0) = ch;
  return a;
}

Mat4 make_rotation(double angle, int axis) {
  if (axis < 1 || axis > 3) throw ValidationError("rotation axis must be 1..3");
  int u = axis % 3 + 1, v = u % 3 + 1;  // the plane rotated, right-handed
  Mat4 a = Mat4::identity();
  double c = std::cos(angle), s = std::sin(angle);
  a(u, u) = c;
  a(v, v) = c;
  a(u, v) = -s;
  a(v, u) = s;
  return a;
}

Mat4 make_rotation_deriv(double angle, int axis) {
  if (axis < 1 || axis > 3) throw ValidationError("rotation axis must be 1..3");
  int u = axis % 3 + 1, v = u % 3 + 1;
  Mat4 a;
  double c = std::cos(angle), s = std::sin(angle);
  a(u, u) = -s;
  a(v, v) = -s;
  a(u, v) = -c;
  a(v, u) = c;
  return a;
}

}  // namespace relforms
