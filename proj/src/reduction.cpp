#include "relforms/reduction.hpp"

#include <json.hpp>
#include <numeric>

#include "relforms/errors.hpp"

namespace relforms {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}
Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }

GRat operator+(const GRat& a, const GRat& b) { return {a.re + b.re, a.im + b.im}; }
GRat operator*(const GRat& a, const GRat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GRat operator-(const GRat& a) { return {-a.re, -a.im}; }
bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::string to_string(const GRat& g) {
  return to_string(g.re) + (g.im.num < 0 ? " - " : " + ") +
         to_string(g.im.num < 0 ? -g.im : g.im) + "i";
}

namespace {

// delta_pm at k0 = shift*k with a rational prefactor: one delta atom plus one
// PV atom carrying +-1 in units of i/pi.
void push_delta_pm(std::vector<ExactAtom>& out, ExactAtom::Tag tag, int pm_sign, int shift,
                   const GRat& coeff) {
  out.push_back({tag, ExactAtom::Kind::Delta, shift, coeff});
  GRat pv = coeff * GRat{Rational(pm_sign), Rational(0)};
  out.push_back({tag, ExactAtom::Kind::PV, shift, pv});
}

std::vector<ExactAtom> combine(std::vector<ExactAtom> atoms) {
  std::vector<ExactAtom> out;
  for (const auto& a : atoms) {
    bool merged = false;
    for (auto& b : out)
      if (b.tag == a.tag && b.kind == a.kind && b.shift == a.shift) {
        b.coeff = b.coeff + a.coeff;
        merged = true;
        break;
      }
    if (!merged) out.push_back(a);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const ExactAtom& a) { return a.coeff.is_zero(); }),
            out.end());
  return out;
}

const GRat kHalf{Rational(1, 2), Rational(0)};
const GRat kThreeQ{Rational(3, 4), Rational(0)};
const GRat kMinusQ{Rational(-1, 4), Rational(0)};

}  // namespace

ReductionReport reduce_covariant_to_3d(int variant, bool perturb) {
  if (variant != 1 && variant != 2) throw ValidationError("reduction variant must be 1 or 2");
  using Tag = ExactAtom::Tag;

  // interior weight of the mode-coordinate ansatz; the negative control
  // replaces 3/4 by 1/2, which breaks the pairwise PV cancellation
  GRat wq = perturb ? kHalf : kThreeQ;

  std::vector<ExactAtom> atoms;
  if (variant == 1) {
    // mode coordinate at k: (1/2) Adag dp(k0+k) + (3/4) A dm(k0+k) - (1/4) A dp(k0-k)
    push_delta_pm(atoms, Tag::Adag, +1, -1, kHalf);
    push_delta_pm(atoms, Tag::A, -1, -1, wq);
    push_delta_pm(atoms, Tag::A, +1, +1, kMinusQ);
    // mode momentum at -k after reflecting the frequency axis:
    // -(1/4) A dm(k0-k) + (1/2) Adag dm(k0+k) + (3/4) A dp(k0+k)
    push_delta_pm(atoms, Tag::A, -1, +1, kMinusQ);
    push_delta_pm(atoms, Tag::Adag, -1, -1, kHalf);
    push_delta_pm(atoms, Tag::A, +1, -1, kThreeQ);
  } else {
    // second variant: the same structure with the amplitudes interchanged
    push_delta_pm(atoms, Tag::Adag, +1, -1, kMinusQ);
    push_delta_pm(atoms, Tag::A, +1, +1, kHalf);
    push_delta_pm(atoms, Tag::Adag, -1, +1, wq);

    push_delta_pm(atoms, Tag::A, -1, +1, kHalf);
    push_delta_pm(atoms, Tag::Adag, +1, +1, kThreeQ);
    push_delta_pm(atoms, Tag::Adag, -1, -1, kMinusQ);
  }

  ReductionReport rep;
  rep.variant = variant;
  rep.perturbed = perturb;
  rep.table = combine(std::move(atoms));

  rep.pv_clean = true;
  GRat one{Rational(1), Rational(0)};
  for (const auto& a : rep.table) {
    if (a.kind == ExactAtom::Kind::PV && !a.coeff.is_zero()) rep.pv_clean = false;
    if (a.kind == ExactAtom::Kind::Delta) {
      if (a.tag == Tag::A) rep.coeff_A = rep.coeff_A + a.coeff;
      else rep.coeff_Adag = rep.coeff_Adag + a.coeff;
    }
  }
  rep.pass = rep.pv_clean && rep.coeff_A == one && rep.coeff_Adag == one;
  return rep;
}

bool reduction_variants_agree(const ReductionReport& a, const ReductionReport& b) {
  return a.pass && b.pass && a.coeff_A == b.coeff_A && a.coeff_Adag == b.coeff_Adag;
}

std::string ReductionReport::to_json() const {
  nlohmann::json j;
  j["variant"] = variant;
  j["perturbed"] = perturbed;
  j["pass"] = pass;
  j["pv_clean"] = pv_clean;
  j["coeff_A"] = to_string(coeff_A);
  j["coeff_Adag"] = to_string(coeff_Adag);
  j["table"] = nlohmann::json::array();
  for (const auto& a : table) {
    j["table"].push_back({{"tag", a.tag == ExactAtom::Tag::A ? "A" : "Adag"},
                          {"kind", a.kind == ExactAtom::Kind::Delta ? "delta" : "pv(i/pi)"},
                          {"shift", a.shift},
                          {"coeff", to_string(a.coeff)}});
  }
  return j.dump(2);
}

}  // namespace relforms
