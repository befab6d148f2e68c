#pragma once

#include <string>
#include <vector>

#include "relforms/generators.hpp"

namespace relforms {

// One of the ten generators: P_nu (covariant) or M^{ab} (contravariant).
struct GeneratorId {
  enum class Type { P, M } type = Type::P;
  int a = 0, b = 0;

  static GeneratorId p(int nu) { return {Type::P, nu, 0}; }
  static GeneratorId m(int a, int b) { return {Type::M, a, b}; }
  std::string label() const;
};

struct IdentityTerm {
  double coeff;
  GeneratorId gen;
};

// [lhs1, lhs2] = sum coeff * gen. `sign` of the whole table flips between the
// covariant-pair convention and the reduced 3D representation.
struct BracketIdentity {
  std::string name;
  GeneratorId lhs1, lhs2;
  std::vector<IdentityTerm> rhs;
};

// The 45 independent closure identities (6 translation-translation,
// 24 rotation-translation, 15 rotation-rotation).
std::vector<BracketIdentity> closure_identities(double rhs_sign = 1.0);

Cxd bracket_of_generators(const GenGradients& grads, const GeneratorId& f, const GeneratorId& g);
Cxd generator_value(const GeneratorSet& set, const GeneratorId& id);

struct BracketCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct BracketReport {
  std::string kind;
  std::vector<BracketCheck> checks;
  double generator_scale = 1.0;
  double lattice_spacing = 0.0;
  std::string point_digest;

  bool all_pass() const;
  double max_residual() const;
  void add(const std::string& name, double residual, double tol);
  std::string to_json() const;
};

// Residuals of all 45 identities at one on-shell point, normalized by the
// generator scale. Field-only checks can additionally be compared against the
// exact symbolic kernel commutators (see kernels.hpp).
BracketReport verify_lie_algebra(const PhaseSpacePoint& pt, const FormOfDynamics& form, double tol,
                                 GeneratorBasis basis = GeneratorBasis::General);

// World-line conditions: the position-generator brackets, their rotation
// contraction, and the instant-form special values.
BracketReport verify_currie(const PhaseSpacePoint& pt, const FormOfDynamics& form, double tol,
                            double tol_instant = 1e-10);

// Exact structure-constant verification of the field-sector kernel algebra.
BracketReport verify_kernel_algebra(double tol = 1e-12);

// Bit-stable content digest of a phase point (positions, momenta, amplitudes).
std::string point_digest(const PhaseSpacePoint& pt);

}  // namespace relforms
