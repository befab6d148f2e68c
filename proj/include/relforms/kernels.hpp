#pragma once

#include <array>

#include "relforms/phase_space.hpp"

namespace relforms {

// Field-sector generator kernels: operators acting on the mode coordinate in
// bilinears sum_m Pt_gamma (K Qt)^gamma. Closed family under commutation:
//   matrix  — constant Lorentz matrix (identity in wavevector space)
//   first   — coefficients of k^a d/dk_b terms (scalar on the Lorentz index)
//   kmult   — multiplication by m^nu k_nu (identity on the Lorentz index)
struct OperatorKernel {
  std::array<std::array<Cxd, 4>, 4> matrix{};
  std::array<std::array<Cxd, 4>, 4> first{};  // first[a][b]: coeff of k^a d/dk_b
  std::array<Cxd, 4> kmult{};

  OperatorKernel& operator+=(const OperatorKernel& o);
  OperatorKernel& operator*=(const Cxd& s);
  double max_abs() const;
};

OperatorKernel operator-(const OperatorKernel& a, const OperatorKernel& b);

// Exact symbolic commutator [K1, K2]; the family is closed, so the result is
// representable without discretization error.
OperatorKernel kernel_commutator(const OperatorKernel& k1, const OperatorKernel& k2);

// Kernels of the generator field parts.
OperatorKernel kernel_translation(int nu);   // -i k_nu
OperatorKernel kernel_rotation(int a, int b);  // sigma^{ab} + k^b d_a - k^a d_b

// Bilinear value sum_m Pt (K Qt) on lattice data (stencils realize d/dk).
Cxd evaluate_kernel(const OperatorKernel& k, const PhaseSpacePoint& pt);

}  // namespace relforms
