#pragma once

#include <cmath>
#include <type_traits>

namespace relforms {

// Forward-mode scalar: value plus directional derivative.
struct Dual {
  double v = 0.0;
  double d = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value), d(0.0) {}
  constexpr Dual(double value, double deriv) : v(value), d(deriv) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(const Dual& a, const Dual& b) {
  double inv = 1.0 / b.v;
  return {a.v * inv, (a.d - a.v * b.d * inv) * inv};
}
inline bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
inline bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }

inline Dual sqrt(const Dual& x) {
  double s = std::sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
inline Dual exp(const Dual& x) {
  double e = std::exp(x.v);
  return {e, x.d * e};
}
inline Dual sin(const Dual& x) { return {std::sin(x.v), x.d * std::cos(x.v)}; }
inline Dual cos(const Dual& x) { return {std::cos(x.v), -x.d * std::sin(x.v)}; }
inline Dual abs(const Dual& x) { return x.v >= 0 ? x : -x; }

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }
inline double deriv_of(double) { return 0.0; }
inline double deriv_of(const Dual& x) { return x.d; }

// Minimal complex over a templated scalar. Holomorphic arithmetic only; conj()
// exists for storage-level pairing, never inside differentiated functionals.
template <class T>
struct Cx {
  T re{};
  T im{};

  constexpr Cx() = default;
  constexpr Cx(T r) : re(r), im(T(0)) {}
  constexpr Cx(T r, T i) : re(r), im(i) {}

  Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
  Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
};

template <class T> Cx<T> operator+(Cx<T> a, const Cx<T>& b) { return a += b; }
template <class T> Cx<T> operator-(Cx<T> a, const Cx<T>& b) { return a -= b; }
template <class T> Cx<T> operator-(const Cx<T>& a) { return {-a.re, -a.im}; }
template <class T> Cx<T> operator*(const Cx<T>& a, const Cx<T>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T> Cx<T> operator*(double s, const Cx<T>& a) { return {T(s) * a.re, T(s) * a.im}; }
template <class T> Cx<T> operator*(const Cx<T>& a, double s) { return {a.re * T(s), a.im * T(s)}; }
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Cx<T> operator*(const T& s, const Cx<T>& a) { return {s * a.re, s * a.im}; }
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Cx<T> operator*(const Cx<T>& a, const T& s) { return {a.re * s, a.im * s}; }
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Cx<T> operator/(const Cx<T>& a, const T& s) { return {a.re / s, a.im / s}; }
template <class T> Cx<T> operator/(const Cx<T>& a, double s) { return {a.re / T(s), a.im / T(s)}; }
template <class T> Cx<T> operator/(const Cx<T>& a, const Cx<T>& b) {
  T n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

template <class T> Cx<T> conj(const Cx<T>& a) { return {a.re, -a.im}; }
template <class T> T norm2(const Cx<T>& a) { return a.re * a.re + a.im * a.im; }
template <class T> T abs(const Cx<T>& a) { using std::sqrt; using relforms::sqrt; return sqrt(norm2(a)); }

// e^{i phase}
template <class T> Cx<T> cis(const T& phase) {
  using std::sin; using std::cos; using relforms::sin; using relforms::cos;
  return {cos(phase), sin(phase)};
}

// Principal square root; used on values near the positive real axis.
template <class T> Cx<T> sqrt(const Cx<T>& z) {
  using std::sqrt; using relforms::sqrt;
  T r = abs(z);
  T s = sqrt((r + z.re) * 0.5);
  if (value_of(s) == 0.0) return {T(0), sqrt(r)};
  return {s, z.im / (s * 2.0)};
}

using Cxd = Cx<double>;

inline Cxd value_of(const Cx<Dual>& z) { return {z.re.v, z.im.v}; }
inline Cxd deriv_of(const Cx<Dual>& z) { return {z.re.d, z.im.d}; }
inline Cxd value_of(const Cxd& z) { return z; }

}  // namespace relforms
