#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "relforms/dual.hpp"
#include "relforms/errors.hpp"
#include "relforms/grid.hpp"
#include "relforms/minkowski.hpp"

namespace relforms {

struct ParticleState {
  double mass = 1.0;
  double charge = 0.0;
  FourVector x{};  // position, contravariant
  FourVector p{};  // canonical momentum, covariant components
};

struct FieldMode {
  FourVector k{};   // wavevector, covariant components
  double weight = 1.0;
  int metric_sign = 1;  // sign of k.k (the lattice excludes the null cone)
  CVec4d Q{};       // mode coordinate, contravariant
  CVec4d P{};       // mode momentum, covariant
};

// Quadrature normalization 1/N(k) with N(k) = sqrt(4 pi^3 |k.k|).
inline double mode_norm(const FourVector& k_cov) {
  FourVector ku = flip_index(k_cov);
  double kk = contract(k_cov, ku);
  return std::sqrt(4.0 * M_PI * M_PI * M_PI * std::abs(kk));
}

struct ModeLattice {
  std::vector<FieldMode> modes;
  std::shared_ptr<const Grid> grid;   // geometry for d/dk stencils; may be null for ad-hoc mode lists
  Mat4 kmap = Mat4::identity();       // chains grid axes to wavevector components after a frame map
  double spacing = 1.0;               // representative spacing (axis 0)
  bool paired = false;                // modes come in +-k pairs with conjugate amplitudes
  std::vector<int> mirror;            // index of the mode at -k, or -1

  std::size_t size() const { return modes.size(); }
};

struct PhaseSpacePoint {
  std::vector<ParticleState> particles;
  ModeLattice field;
};

// The same canonical data read in moving-frame variables (q_j, fraktur-p_j,
// Q_k, P_k); produced by the canonical transformation in frame_transform.hpp.
using TransformedPoint = PhaseSpacePoint;

// --- forms of dynamics ------------------------------------------------------

struct FormOfDynamics {
  enum class Kind { Instant, LightCone, Hyperboloid, Custom };
  Kind kind = Kind::Instant;
  double A = 0.0;  // hyperboloid scale
  std::function<double(const FourVector&)> custom_g;
  std::function<FourVector(const FourVector&)> custom_grad;

  static FormOfDynamics instant() { return {}; }
  static FormOfDynamics light_cone() {
    FormOfDynamics f;
    f.kind = Kind::LightCone;
    return f;
  }
  static FormOfDynamics hyperboloid(double A) {
    FormOfDynamics f;
    f.kind = Kind::Hyperboloid;
    f.A = A;
    return f;
  }

  template <class T>
  T g(const Vec4<T>& q) const {
    switch (kind) {
      case Kind::Instant: return q[0];
      case Kind::LightCone: return minkowski_dot(q, q);
      case Kind::Hyperboloid: return minkowski_dot(q, q) - T(A * A);
      case Kind::Custom:
        if constexpr (std::is_same_v<T, double>) return custom_g(q);
        else throw ValidationError("custom form supports plain evaluation only");
    }
    return T(0);
  }

  // Gradient with the index down: dg/dq^nu.
  template <class T>
  Vec4<T> grad(const Vec4<T>& q) const {
    switch (kind) {
      case Kind::Instant: return {{T(1), T(0), T(0), T(0)}};
      case Kind::LightCone:
      case Kind::Hyperboloid: {
        Vec4<T> lo = flip_index(q);
        return 2.0 * lo;
      }
      case Kind::Custom:
        if constexpr (std::is_same_v<T, double>) return custom_grad(q);
        else throw ValidationError("custom form supports plain evaluation only");
    }
    return {};
  }

  const char* name() const {
    switch (kind) {
      case Kind::Instant: return "instant";
      case Kind::LightCone: return "lightcone";
      case Kind::Hyperboloid: return "hyperboloid";
      case Kind::Custom: return "custom";
    }
    return "?";
  }
};

// --- scalar-generic views for forward-mode differentiation ------------------

template <class T>
struct TParticle {
  double mass, charge;
  Vec4<T> x, p;
};

template <class T>
struct TMode {
  FourVector k;
  double weight;
  CVec4<T> Q, P;
};

template <class T>
struct TPoint {
  std::vector<TParticle<T>> particles;
  std::vector<TMode<T>> modes;
  const ModeLattice* geom = nullptr;
};

// Canonical coordinate layout: per particle (x^0..x^3, p_0..p_3), then per
// mode the rescaled pairs (Qt^0..Qt^3, Pt_0..Pt_3) with Qt = sqrt(w) Q,
// Pt = sqrt(w) P, so every discrete pair has a unit bracket.
struct CoordLayout {
  std::size_t n_particles = 0;
  std::size_t n_modes = 0;
  std::size_t count() const { return 8 * (n_particles + n_modes); }
  std::size_t part_x(std::size_t j, int mu) const { return 8 * j + std::size_t(mu); }
  std::size_t part_p(std::size_t j, int mu) const { return 8 * j + 4 + std::size_t(mu); }
  std::size_t mode_q(std::size_t m, int mu) const { return 8 * (n_particles + m) + std::size_t(mu); }
  std::size_t mode_p(std::size_t m, int mu) const { return 8 * (n_particles + m) + 4 + std::size_t(mu); }
};

inline CoordLayout layout_of(const PhaseSpacePoint& pt) {
  return {pt.particles.size(), pt.field.size()};
}

template <class T>
TPoint<T> make_tpoint(const PhaseSpacePoint& pt) {
  TPoint<T> out;
  out.geom = &pt.field;
  out.particles.reserve(pt.particles.size());
  for (const auto& ps : pt.particles) {
    TParticle<T> q{ps.mass, ps.charge, {}, {}};
    for (int i = 0; i < 4; ++i) {
      q.x[i] = T(ps.x[i]);
      q.p[i] = T(ps.p[i]);
    }
    out.particles.push_back(q);
  }
  out.modes.reserve(pt.field.size());
  for (const auto& fm : pt.field.modes) {
    TMode<T> m{fm.k, fm.weight, {}, {}};
    for (int i = 0; i < 4; ++i) {
      m.Q[i] = Cx<T>(T(fm.Q[i].re), T(fm.Q[i].im));
      m.P[i] = Cx<T>(T(fm.P[i].re), T(fm.P[i].im));
    }
    out.modes.push_back(m);
  }
  return out;
}

// Seed the dual part of one canonical coordinate. Complex mode coordinates are
// perturbed along the real axis (holomorphic derivative); the 1/sqrt(w)
// rescaling makes the seeded coordinate the unit-bracket one.
void seed_coordinate(TPoint<Dual>& pt, const CoordLayout& lay, std::size_t coord);

// --- operations --------------------------------------------------------------

// A^mu(x) = sum_m w/N(k) (Q^mu e^{i k.x} + P^mu e^{-i k.x}); linear in (Q, P).
template <class T>
CVec4<T> vector_potential(const TPoint<T>& pt, const Vec4<T>& x) {
  CVec4<T> out{};
  for (const auto& m : pt.modes) {
    double cnorm = m.weight / mode_norm(m.k);
    T phase = T(m.k[0]) * x[0];
    for (int i = 1; i < 4; ++i) phase += T(m.k[i]) * x[i];
    Cx<T> ep = cis(phase);
    Cx<T> em = conj(ep);  // e^{-i phase}, exact for real phase
    for (int mu = 0; mu < 4; ++mu) {
      Cx<T> pmu_up = (mu == 0 ? m.P[mu] : -m.P[mu]);
      out[mu] += cnorm * (m.Q[mu] * ep + pmu_up * em);
    }
  }
  return out;
}

CVec4d vector_potential(const PhaseSpacePoint& pt, const FourVector& x);

// d A^mu / d x^nu, real part, as a mixed matrix [mu][nu].
std::array<CVec4d, 4> vector_potential_gradient(const PhaseSpacePoint& pt, const FourVector& x);

// pi_mu = p_mu - e A_mu(x) with the real part of the potential; the residual
// is pi.pi - m^2.
double constraint_residual(const PhaseSpacePoint& pt, std::size_t j);

// Complex kinetic momentum pi^alpha (contravariant) built from the full
// complex potential; the generator formulas are holomorphic in the field.
template <class T>
CVec4<T> kinetic_momentum_upper(const TPoint<T>& pt, std::size_t j) {
  const auto& ps = pt.particles[j];
  CVec4<T> a = vector_potential(pt, ps.x);
  CVec4<T> pi;
  for (int mu = 0; mu < 4; ++mu) {
    Cx<T> a_lo = (mu == 0 ? a[mu] : -a[mu]);
    Cx<T> p_lo = Cx<T>(ps.p[mu]) - ps.charge * a_lo;
    pi[mu] = (mu == 0 ? p_lo : -p_lo);
  }
  return pi;
}

// Complex constraint value pi.pi - m^2 for particle j.
template <class T>
Cx<T> constraint_value(const TPoint<T>& pt, std::size_t j) {
  CVec4<T> pi = kinetic_momentum_upper(pt, j);
  Cx<T> s = pi[0] * pi[0] - pi[1] * pi[1] - pi[2] * pi[2] - pi[3] * pi[3];
  return s - Cx<T>(T(pt.particles[j].mass * pt.particles[j].mass));
}

// Place every particle on the g = 0 surface (adjusting x^0, root nearest the
// current value) and solve the mass-shell constraint for p_0 choosing the
// positive-energy root.
PhaseSpacePoint project_to_constraints(const PhaseSpacePoint& pt, const FormOfDynamics& form);

}  // namespace relforms
