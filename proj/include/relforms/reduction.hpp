#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace relforms {

// Exact rational arithmetic for the formal reduction; magnitudes stay tiny.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d);
  static Rational zero() { return {}; }
  bool is_zero() const { return num == 0; }
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator-(const Rational& a);
bool operator==(const Rational& a, const Rational& b);

// Gaussian rational a + b i.
struct GRat {
  Rational re, im;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

GRat operator+(const GRat& a, const GRat& b);
GRat operator*(const GRat& a, const GRat& b);
GRat operator-(const GRat& a);
bool operator==(const GRat& a, const GRat& b);

std::string to_string(const Rational& r);
std::string to_string(const GRat& g);

// One term of the reduced integrand: amplitude tag times a delta or
// principal-value atom at k0 = shift * k. PV coefficients are recorded in
// units of i/pi so the bookkeeping stays rational.
struct ExactAtom {
  enum class Tag { A, Adag } tag;     // A_k resp. Adag_{-k}
  enum class Kind { Delta, PV } kind;
  int shift;                          // +1 -> k0 = +k, -1 -> k0 = -k
  GRat coeff;
};

struct ReductionReport {
  int variant = 1;
  bool perturbed = false;
  std::vector<ExactAtom> table;   // normalized atom table after combining
  GRat coeff_A, coeff_Adag;       // integrated delta coefficients per tag
  bool pv_clean = false;          // every PV coefficient cancelled exactly
  bool pass = false;              // both coefficients exactly 1 and pv_clean

  std::string to_json() const;
};

// Substitute the singular mode ansatz (variant 1 or 2) into the instant-form
// potential integrand and integrate over the frequency axis with exact
// coefficients. `perturb` damages one interior weight as a negative control.
ReductionReport reduce_covariant_to_3d(int variant, bool perturb = false);

bool reduction_variants_agree(const ReductionReport& a, const ReductionReport& b);

}  // namespace relforms
