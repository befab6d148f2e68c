#include "relforms/kernels.hpp"

#include "relforms/generators.hpp"

namespace relforms {

OperatorKernel& OperatorKernel::operator+=(const OperatorKernel& o) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      matrix[std::size_t(i)][std::size_t(j)] += o.matrix[std::size_t(i)][std::size_t(j)];
      first[std::size_t(i)][std::size_t(j)] += o.first[std::size_t(i)][std::size_t(j)];
    }
  for (int i = 0; i < 4; ++i) kmult[std::size_t(i)] += o.kmult[std::size_t(i)];
  return *this;
}

OperatorKernel& OperatorKernel::operator*=(const Cxd& s) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      matrix[std::size_t(i)][std::size_t(j)] = matrix[std::size_t(i)][std::size_t(j)] * s;
      first[std::size_t(i)][std::size_t(j)] = first[std::size_t(i)][std::size_t(j)] * s;
    }
  for (int i = 0; i < 4; ++i) kmult[std::size_t(i)] = kmult[std::size_t(i)] * s;
  return *this;
}

double OperatorKernel::max_abs() const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      s = std::max(s, abs(matrix[std::size_t(i)][std::size_t(j)]));
      s = std::max(s, abs(first[std::size_t(i)][std::size_t(j)]));
    }
  for (int i = 0; i < 4; ++i) s = std::max(s, abs(kmult[std::size_t(i)]));
  return s;
}

OperatorKernel operator-(const OperatorKernel& a, const OperatorKernel& b) {
  OperatorKernel r = a;
  OperatorKernel nb = b;
  nb *= Cxd(-1.0, 0.0);
  r += nb;
  return r;
}

OperatorKernel kernel_commutator(const OperatorKernel& k1, const OperatorKernel& k2) {
  OperatorKernel r;
  // matrix commutator
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Cxd s{};
      for (int l = 0; l < 4; ++l)
        s += k1.matrix[std::size_t(i)][std::size_t(l)] * k2.matrix[std::size_t(l)][std::size_t(j)] -
             k2.matrix[std::size_t(i)][std::size_t(l)] * k1.matrix[std::size_t(l)][std::size_t(j)];
      r.matrix[std::size_t(i)][std::size_t(j)] = s;
    }
  // [k^a d_b, k^c d_d] = g^{bc} k^a d_d - g^{da} k^c d_b
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Cxd c1 = k1.first[std::size_t(a)][std::size_t(b)];
      if (c1.re == 0.0 && c1.im == 0.0) continue;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          Cxd c2 = k2.first[std::size_t(c)][std::size_t(d)];
          if (c2.re == 0.0 && c2.im == 0.0) continue;
          Cxd prod = c1 * c2;
          if (b == c) r.first[std::size_t(a)][std::size_t(d)] += metric_diag(b) * prod;
          if (d == a) r.first[std::size_t(c)][std::size_t(b)] -= metric_diag(d) * prod;
        }
    }
  // [k^a d_b, m_nu k_nu] = m_b k^a  ->  kmult via k^a = g^{a nu} k_nu
  auto first_kmult = [&r](const OperatorKernel& kf, const OperatorKernel& km, double sign) {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        Cxd cf = kf.first[std::size_t(a)][std::size_t(b)];
        if (cf.re == 0.0 && cf.im == 0.0) continue;
        Cxd cm = km.kmult[std::size_t(b)];
        if (cm.re == 0.0 && cm.im == 0.0) continue;
        r.kmult[std::size_t(a)] += (sign * metric_diag(a)) * (cf * cm);
      }
  };
  first_kmult(k1, k2, +1.0);
  first_kmult(k2, k1, -1.0);
  return r;
}

OperatorKernel kernel_translation(int nu) {
  OperatorKernel k;
  k.kmult[std::size_t(nu)] = Cxd(0.0, -1.0);
  return k;
}

OperatorKernel kernel_rotation(int a, int b) {
  OperatorKernel k;
  // sigma^{ab}[gamma][delta] = g^{gamma b} delta^a_delta - g^{gamma a} delta^b_delta
  for (int gamma = 0; gamma < 4; ++gamma) {
    if (gamma == b) k.matrix[std::size_t(gamma)][std::size_t(a)] += Cxd(metric_diag(b), 0.0);
    if (gamma == a) k.matrix[std::size_t(gamma)][std::size_t(b)] -= Cxd(metric_diag(a), 0.0);
  }
  k.first[std::size_t(b)][std::size_t(a)] += Cxd(1.0, 0.0);
  k.first[std::size_t(a)][std::size_t(b)] -= Cxd(1.0, 0.0);
  return k;
}

Cxd evaluate_kernel(const OperatorKernel& k, const PhaseSpacePoint& pt) {
  TPoint<double> tp = make_tpoint<double>(pt);
  detail::FieldWorkspace<double> ws;
  ws.build(tp);
  Cxd out{};
  for (std::size_t m = 0; m < tp.modes.size(); ++m) {
    const FourVector& kc = tp.modes[m].k;
    FourVector ku = flip_index(kc);
    CVec4d kq{};
    for (int g = 0; g < 4; ++g)
      for (int d = 0; d < 4; ++d) {
        Cxd c = k.matrix[std::size_t(g)][std::size_t(d)];
        if (c.re != 0.0 || c.im != 0.0) kq[g] += c * ws.Qt[m][d];
      }
    Cxd scal{};
    for (int nu = 0; nu < 4; ++nu) scal += k.kmult[std::size_t(nu)] * kc[nu];
    std::array<CVec4d, 4> dk;
    bool need_dk = false;
    for (int a = 0; a < 4 && !need_dk; ++a)
      for (int b = 0; b < 4; ++b)
        if (k.first[std::size_t(a)][std::size_t(b)].re != 0.0 ||
            k.first[std::size_t(a)][std::size_t(b)].im != 0.0) {
          need_dk = true;
          break;
        }
    if (need_dk)
      for (int b = 0; b < 4; ++b) dk[std::size_t(b)] = ws.dk(tp, m, b);
    for (int g = 0; g < 4; ++g) {
      Cxd v = kq[g] + scal * ws.Qt[m][g];
      if (need_dk)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            Cxd c = k.first[std::size_t(a)][std::size_t(b)];
            if (c.re != 0.0 || c.im != 0.0) v += c * (ku[a] * dk[std::size_t(b)][g]);
          }
      out += ws.Pt[m][g] * v;
    }
  }
  return out;
}

}  // namespace relforms
