#include "relforms/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "relforms/errors.hpp"

namespace relforms {

DistExpr& DistExpr::operator+=(const DistExpr& o) {
  atoms.insert(atoms.end(), o.atoms.begin(), o.atoms.end());
  return *this;
}

DistExpr& DistExpr::operator*=(const Cxd& s) {
  for (auto& a : atoms) a.coeff = a.coeff * s;
  return *this;
}

void DistExpr::normalize(double shift_tol) {
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    bool merged = false;
    for (auto& b : out)
      if (b.kind == a.kind && std::abs(b.shift - a.shift) < shift_tol) {
        b.coeff += a.coeff;
        merged = true;
        break;
      }
    if (!merged) out.push_back(a);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Atom& a) { return a.coeff.re == 0.0 && a.coeff.im == 0.0; }),
            out.end());
  std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) {
    if (a.shift != b.shift) return a.shift < b.shift;
    return int(a.kind) < int(b.kind);
  });
  atoms = std::move(out);
}

DistExpr DistExpr::reflected() const {
  DistExpr out;
  for (const auto& a : atoms) {
    Atom r = a;
    r.shift = -a.shift;
    if (a.kind == Kind::PV) r.coeff = -a.coeff;  // 1/(-x - s) = -1/(x + s)
    out.atoms.push_back(r);
  }
  return out;
}

DistExpr operator+(DistExpr a, const DistExpr& b) { return a += b; }
DistExpr operator-(DistExpr a, const DistExpr& b) {
  DistExpr nb = b;
  nb *= Cxd(-1.0, 0.0);
  return a += nb;
}
DistExpr operator*(const Cxd& s, DistExpr a) {
  a *= s;
  return a;
}

DistExpr delta_atom(double shift, Cxd coeff) { return {{{DistExpr::Kind::Delta, shift, coeff}}}; }
DistExpr pv_atom(double shift, Cxd coeff) { return {{{DistExpr::Kind::PV, shift, coeff}}}; }

DistExpr delta_pm(int sign, double shift) {
  DistExpr out = delta_atom(shift);
  out += pv_atom(shift, Cxd(0.0, sign >= 0 ? 1.0 / M_PI : -1.0 / M_PI));
  return out;
}

DistExpr delta_quadratic(double k) {
  if (!(k > 0.0)) throw ValidationError("quadratic delta needs k > 0");
  DistExpr out = delta_atom(k, Cxd(0.5 / k, 0.0));
  out += delta_atom(-k, Cxd(0.5 / k, 0.0));
  return out;
}

DistExpr pv_quadratic(double k) {
  if (!(k > 0.0)) throw ValidationError("quadratic principal value needs k > 0");
  DistExpr out = pv_atom(k, Cxd(0.5 / k, 0.0));
  out += pv_atom(-k, Cxd(-0.5 / k, 0.0));
  return out;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr int kGl = 16;
const double kGlX[kGl] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
const double kGlW[kGl] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

Cxd gl_integrate(const std::function<Cxd(double)>& f, double a, double b, int panels) {
  Cxd out{};
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    for (int i = 0; i < kGl; ++i) {
      double x = lo + 0.5 * h * (kGlX[i] + 1.0);
      out += (0.5 * h * kGlW[i]) * f(x);
    }
  }
  return out;
}

}  // namespace

Cxd pv_integral(const std::function<Cxd(double)>& f, double s, const PvQuadratureOptions& opts) {
  auto excised = [&](double eps) {
    // odd-difference form on (eps, window]: [f(s+t) - f(s-t)] / t
    auto g = [&](double t) { return (f(s + t) - f(s - t)) / Cxd(t, 0.0); };
    // log-spaced inner panels resolve the near-pole region
    Cxd out{};
    double lo = eps;
    double hi = opts.window;
    int seg = 8;
    double ratio = std::pow(hi / lo, 1.0 / seg);
    double a = lo;
    for (int i = 0; i < seg; ++i) {
      double b = a * ratio;
      out += gl_integrate(g, a, b, std::max(1, opts.panels / seg));
      a = b;
    }
    return out;
  };
  Cxd c1 = excised(opts.excision);
  Cxd c2 = excised(opts.excision / 2.0);
  Cxd val = 2.0 * c2 - c1;  // first-order Richardson in the excision radius
  if (!std::isfinite(val.re) || !std::isfinite(val.im))
    throw ValidationError("divergent principal-value integrand");
  return val;
}

Cxd integrate_against(const DistExpr& expr, const std::function<Cxd(double)>& f,
                      const PvQuadratureOptions& opts) {
  Cxd out{};
  for (const auto& a : expr.atoms) {
    if (a.kind == DistExpr::Kind::Delta) {
      out += a.coeff * f(a.shift);
    } else {
      out += a.coeff * pv_integral(f, a.shift, opts);
    }
  }
  return out;
}

ForwardMapResult forward_map_A(const std::function<CVec4d(double)>& profileQ,
                               const std::function<CVec4d(double)>& profileP, double k,
                               const PvQuadratureOptions& opts) {
  if (!(k > 0.0)) throw ValidationError("forward map needs k > 0");
  ForwardMapResult res;
  // weight w(x) = k sqrt(4 pi^3 |x^2 - k^2|), the |.| convention of the
  // lattice normalization
  auto weight = [k](double x) {
    return k * std::sqrt(4.0 * M_PI * M_PI * M_PI * std::abs(x * x - k * k));
  };
  const Cxd pref = Cxd(0.0, -1.0 / (8.0 * M_PI * M_PI));
  const Cxd ip = Cxd(0.0, 1.0 / M_PI);

  DistExpr dq = delta_quadratic(k);
  DistExpr pq = pv_quadratic(k);

  for (int mu = 0; mu < 4; ++mu) {
    auto fq = [&](double x) { return Cxd(weight(x), 0.0) * profileQ(x)[mu]; };
    auto fp = [&](double x) { return Cxd(weight(x), 0.0) * profileP(x)[mu]; };
    // delta parts: Q - P against delta(x^2 - k^2)
    Cxd dpart{};
    for (const auto& a : dq.atoms) dpart += a.coeff * (fq(a.shift) - fp(a.shift));
    // PV parts: (i/pi)(Q + P) against PV 1/(x^2 - k^2)
    Cxd vpart{};
    for (const auto& a : pq.atoms) {
      auto sum = [&](double x) { return fq(x) + fp(x); };
      vpart += (ip * a.coeff) * pv_integral(sum, a.shift, opts);
    }
    res.delta_part[mu] = pref * dpart;
    res.pv_part[mu] = pref * vpart;
    res.value[mu] = res.delta_part[mu] + res.pv_part[mu];
  }
  return res;
}

}  // namespace relforms
