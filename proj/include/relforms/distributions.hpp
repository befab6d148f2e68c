#pragma once

#include <functional>
#include <vector>

#include "relforms/dual.hpp"
#include "relforms/minkowski.hpp"

namespace relforms {

// Formal linear combination of delta and principal-value atoms with complex
// coefficients. Atoms at coincident singular shifts are kept separate; no
// product of two singular atoms is ever formed.
struct DistExpr {
  enum class Kind { Delta, PV };
  struct Atom {
    Kind kind;
    double shift;
    Cxd coeff;
  };
  std::vector<Atom> atoms;

  DistExpr& operator+=(const DistExpr& o);
  DistExpr& operator*=(const Cxd& s);
  // combine coefficients of coinciding atoms; drop exact zeros
  void normalize(double shift_tol = 1e-12);
  // x -> -x: delta is even, PV is odd, shifts negate
  DistExpr reflected() const;
};

DistExpr operator+(DistExpr a, const DistExpr& b);
DistExpr operator-(DistExpr a, const DistExpr& b);
DistExpr operator*(const Cxd& s, DistExpr a);

DistExpr delta_atom(double shift, Cxd coeff = Cxd(1.0, 0.0));
DistExpr pv_atom(double shift, Cxd coeff = Cxd(1.0, 0.0));

// delta_pm(x - shift) = delta(x - shift) +- (i/pi) PV 1/(x - shift)
DistExpr delta_pm(int sign, double shift);

// delta(x^2 - k^2) expanded as [delta(x-k) + delta(x+k)] / (2k), k > 0.
DistExpr delta_quadratic(double k);
// PV 1/(x^2 - k^2) = (1/2k) [PV 1/(x-k) - PV 1/(x+k)], k > 0.
DistExpr pv_quadratic(double k);

struct PvQuadratureOptions {
  double excision = 1e-3;   // initial excision radius (Richardson-extrapolated)
  double window = 40.0;     // integration half-width around the pole
  int panels = 64;          // Gauss-Legendre panels
};

// Principal-value integral of f(x)/(x - s) by symmetric excision with one
// Richardson halving; converges at first order or better in the excision
// radius on smooth integrands.
Cxd pv_integral(const std::function<Cxd(double)>& f, double s,
                const PvQuadratureOptions& opts = {});

// Integrate a DistExpr against a smooth rapidly decaying function.
Cxd integrate_against(const DistExpr& expr, const std::function<Cxd(double)>& f,
                      const PvQuadratureOptions& opts = {});

// Numeric realization of the covariant-to-3D forward map for one spatial
// wavevector magnitude: the quadratic delta and PV atoms of the defining
// integral applied to smooth mode profiles. The square root of the metric
// square uses the same |.| convention as the lattice normalization.
struct ForwardMapResult {
  CVec4d value{};
  CVec4d delta_part{};
  CVec4d pv_part{};
};

ForwardMapResult forward_map_A(const std::function<CVec4d(double)>& profileQ,
                               const std::function<CVec4d(double)>& profileP, double k,
                               const PvQuadratureOptions& opts = {});

}  // namespace relforms
