#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "relforms/dual.hpp"

namespace relforms {

// Signature (+,-,-,-), index 0 = time, natural units c = 1.
inline constexpr double metric_diag(int mu) { return mu == 0 ? 1.0 : -1.0; }

template <class T>
struct Vec4 {
  std::array<T, 4> c{};

  T& operator[](int i) { return c[std::size_t(i)]; }
  const T& operator[](int i) const { return c[std::size_t(i)]; }

  Vec4& operator+=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
};

template <class T> Vec4<T> operator+(Vec4<T> a, const Vec4<T>& b) { return a += b; }
template <class T> Vec4<T> operator-(Vec4<T> a, const Vec4<T>& b) { return a -= b; }
template <class T> Vec4<T> operator-(const Vec4<T>& a) { return {{-a[0], -a[1], -a[2], -a[3]}}; }
template <class T, class S> Vec4<T> operator*(const S& s, const Vec4<T>& a) {
  return {{T(s) * a[0], T(s) * a[1], T(s) * a[2], T(s) * a[3]}};
}

using FourVector = Vec4<double>;
template <class T> using CVec4 = Vec4<Cx<T>>;
using CVec4d = CVec4<double>;

// g_{mu nu} u^mu v^nu for two contravariant (or two covariant) vectors.
template <class T>
T minkowski_dot(const Vec4<T>& u, const Vec4<T>& v) {
  return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
}

// Raise or lower one index: flips the sign of the spatial components.
template <class T>
Vec4<T> flip_index(const Vec4<T>& v) {
  return {{v[0], -v[1], -v[2], -v[3]}};
}

// Contraction of a covariant with a contravariant vector (no metric).
template <class T, class U>
auto contract(const Vec4<T>& lower, const Vec4<U>& upper) {
  return lower[0] * upper[0] + lower[1] * upper[1] + lower[2] * upper[2] + lower[3] * upper[3];
}

template <class T>
CVec4<T> to_complex(const Vec4<T>& v) {
  return {{Cx<T>(v[0]), Cx<T>(v[1]), Cx<T>(v[2]), Cx<T>(v[3])}};
}

inline CVec4d real_part(const CVec4d& v) { return {{v[0].re, v[1].re, v[2].re, v[3].re}}; }
inline FourVector re_vec(const CVec4d& v) { return {{v[0].re, v[1].re, v[2].re, v[3].re}}; }
inline FourVector im_vec(const CVec4d& v) { return {{v[0].im, v[1].im, v[2].im, v[3].im}}; }

// Rank-2 tensor with mixed indices a^nu_mu (row nu contravariant, column mu
// covariant), the layout of a Lorentz transformation matrix.
struct Mat4 {
  std::array<std::array<double, 4>, 4> m{};

  double& operator()(int r, int c) { return m[std::size_t(r)][std::size_t(c)]; }
  double operator()(int r, int c) const { return m[std::size_t(r)][std::size_t(c)]; }

  static Mat4 identity() {
    Mat4 a;
    for (int i = 0; i < 4; ++i) a(i, i) = 1.0;
    return a;
  }

  static Mat4 zero() { return Mat4{}; }
};

using LorentzMatrix = Mat4;
// Stores covariant components w_{alpha beta}.
using AntisymTensor = Mat4;

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

inline Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline Mat4 operator-(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline Mat4 operator*(double s, const Mat4& a) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = s * a(i, j);
  return r;
}

inline Mat4 transpose(const Mat4& a) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = a(j, i);
  return r;
}

// Inverse of a pseudo-orthogonal matrix: a^{-1} = g a^T g.
inline Mat4 minkowski_inverse(const Mat4& a) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = metric_diag(i) * a(j, i) * metric_diag(j);
  return r;
}

// max |(a g a^T - g)_{ij}|
inline double pseudo_orthogonality_defect(const Mat4& a) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a(i, k) * metric_diag(k) * a(j, k);
      if (i == j) s -= metric_diag(i);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

// Apply to a contravariant vector: (a v)^nu = a^nu_mu v^mu.
template <class T>
Vec4<T> apply(const Mat4& a, const Vec4<T>& v) {
  Vec4<T> r;
  for (int i = 0; i < 4; ++i) {
    T s = a(i, 0) * v[0];
    for (int j = 1; j < 4; ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

template <class T>
CVec4<T> apply(const Mat4& a, const CVec4<T>& v) {
  CVec4<T> r;
  for (int i = 0; i < 4; ++i) {
    Cx<T> s = v[0] * T(a(i, 0));
    for (int j = 1; j < 4; ++j) s += v[j] * T(a(i, j));
    r[i] = s;
  }
  return r;
}

// Boost along a spatial axis (1..3) with rapidity eta.
Mat4 make_boost(double rapidity, int axis);
// Derivative of make_boost with respect to rapidity.
Mat4 make_boost_deriv(double rapidity, int axis);
// Spatial rotation about axis (1..3) by angle theta.
Mat4 make_rotation(double angle, int axis);
Mat4 make_rotation_deriv(double angle, int axis);

}  // namespace relforms
