#pragma once

#include <array>
#include <memory>
#include <vector>

#include "relforms/dual.hpp"
#include "relforms/grid.hpp"
#include "relforms/verify.hpp"

namespace relforms {

// Instant-form phase space in 3D Fourier variables: particle pairs (q, p)
// with unit brackets and field pairs (A_k, Adag_k) with the bracket
// normalization -(i/4pi^2) g^{mu nu} / w per spatial wavevector.
struct ReducedMode {
  std::array<double, 3> kvec{};
  double kmag = 1.0;
  double weight = 1.0;
  CVec4d A{}, Adag{};
};

struct ReducedParticle {
  double mass = 1.0;
  double charge = 0.0;
  std::array<double, 3> q{}, p{};
};

struct ReducedPoint {
  std::vector<ReducedParticle> particles;
  std::vector<ReducedMode> modes;
  std::shared_ptr<const Grid> grid;  // 3-axis geometry for the d/dk stencils
  double spacing = 1.0;
};

struct ReducedLatticeSpec {
  std::array<int, 3> dims{2, 2, 2};
  std::array<double, 3> spacing{0.5, 0.5, 0.5};
  double offset = 0.5;
  std::uint64_t seed = 1;
  double amplitude = 0.0;   // constant seeded amplitudes
  bool conjugate_pair = true;  // Adag = conj(A)
};

ReducedPoint build_reduced_point(const ReducedLatticeSpec& spec,
                                 const std::vector<ReducedParticle>& particles);

// The defining bracket [A^mu_k, Adag^nu_k'] (zero between two A or two Adag).
Cxd reduced_bracket(int mu, std::size_t k, int nu, std::size_t kprime, const ReducedPoint& pt);

template <class T>
struct TReducedMode {
  std::array<double, 3> kvec;
  double kmag, weight;
  CVec4<T> A, Adag;
};

template <class T>
struct TReducedParticle {
  double mass, charge;
  std::array<T, 3> q, p;
};

template <class T>
struct TReducedPoint {
  std::vector<TReducedParticle<T>> particles;
  std::vector<TReducedMode<T>> modes;
  const ReducedPoint* geom = nullptr;
};

template <class T>
TReducedPoint<T> make_treduced(const ReducedPoint& pt) {
  TReducedPoint<T> out;
  out.geom = &pt;
  for (const auto& ps : pt.particles) {
    TReducedParticle<T> p{ps.mass, ps.charge, {}, {}};
    for (int i = 0; i < 3; ++i) {
      p.q[std::size_t(i)] = T(ps.q[std::size_t(i)]);
      p.p[std::size_t(i)] = T(ps.p[std::size_t(i)]);
    }
    out.particles.push_back(p);
  }
  for (const auto& m : pt.modes) {
    TReducedMode<T> t{m.kvec, m.kmag, m.weight, {}, {}};
    for (int mu = 0; mu < 4; ++mu) {
      t.A[mu] = Cx<T>(T(m.A[mu].re), T(m.A[mu].im));
      t.Adag[mu] = Cx<T>(T(m.Adag[mu].re), T(m.Adag[mu].im));
    }
    out.modes.push_back(t);
  }
  return out;
}

// Coordinate layout: per particle (q^1..q^3, p^1..p^3); per mode
// (A^0..A^3, Adag^0..Adag^3).
struct ReducedLayout {
  std::size_t n_particles = 0, n_modes = 0;
  std::size_t count() const { return 6 * n_particles + 8 * n_modes; }
  std::size_t part_q(std::size_t j, int a) const { return 6 * j + std::size_t(a); }
  std::size_t part_p(std::size_t j, int a) const { return 6 * j + 3 + std::size_t(a); }
  std::size_t mode_a(std::size_t m, int mu) const {
    return 6 * n_particles + 8 * m + std::size_t(mu);
  }
  std::size_t mode_ad(std::size_t m, int mu) const {
    return 6 * n_particles + 8 * m + 4 + std::size_t(mu);
  }
};

inline ReducedLayout reduced_layout(const ReducedPoint& pt) {
  return {pt.particles.size(), pt.modes.size()};
}

void seed_reduced(TReducedPoint<Dual>& pt, const ReducedLayout& lay, std::size_t coord);

// Potential on the instant slice, 1/sqrt(k) measure (the normalization that
// pairs with the unit-free bracket above).
template <class T>
CVec4<T> reduced_potential(const TReducedPoint<T>& pt, const std::array<T, 3>& q) {
  CVec4<T> out{};
  for (const auto& m : pt.modes) {
    T phase = T(m.kvec[0]) * q[0];
    for (int i = 1; i < 3; ++i) phase += T(m.kvec[std::size_t(i)]) * q[std::size_t(i)];
    Cx<T> em = cis(-phase);  // e^{-i k.q}
    Cx<T> ep = conj(em);
    double c = m.weight / std::sqrt(m.kmag);
    for (int mu = 0; mu < 4; ++mu) out[mu] += c * (m.A[mu] * em + m.Adag[mu] * ep);
  }
  return out;
}

// The ten generators in the reduced variables, stored like the covariant set
// (P_nu covariant, M^{ab} contravariant with M^{a0} the boosts).
template <class T>
GenValues<T> eval_generators_reduced(const TReducedPoint<T>& pt);

GeneratorSet generators_reduced(const ReducedPoint& pt);

struct ReducedGradients {
  ReducedLayout lay;
  GeneratorSet value;
  std::vector<std::array<Cxd, 4>> dP;
  std::vector<std::array<std::array<Cxd, 4>, 4>> dM;
};

ReducedGradients reduced_gradients(const ReducedPoint& pt);

// Bracket of two gradient rows under the reduced pairing (unit particle
// pairs, metric-weighted field pairs).
Cxd reduced_bracket_of(const ReducedGradients& g, const ReducedPoint& pt, const GeneratorId& f,
                       const GeneratorId& h);

// Closure of the 45 identities in the reduced representation (same table as
// the covariant case with the right-hand sides sign-flipped by the upper-index
// particle pairing).
BracketReport verify_reduced_lie_algebra(const ReducedPoint& pt, double tol);

// World-line conditions in the reduced variables: [q^a_j, P^b] = delta^{ab},
// the rotation contraction, and the boost relation against [q, P^0].
BracketReport verify_reduced_currie(const ReducedPoint& pt, double tol, double tol_instant = 1e-10);

}  // namespace relforms
