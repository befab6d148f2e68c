#include "relforms/verify.hpp"

#include <json.hpp>

#include "relforms/kernels.hpp"

namespace relforms {

std::string GeneratorId::label() const {
  if (type == Type::P) return "P_" + std::to_string(a);
  return "M^" + std::to_string(a) + std::to_string(b);
}

std::vector<BracketIdentity> closure_identities(double rhs_sign) {
  std::vector<BracketIdentity> out;
  // translations commute
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) {
      BracketIdentity id;
      id.lhs1 = GeneratorId::p(mu);
      id.lhs2 = GeneratorId::p(nu);
      id.name = "[P_" + std::to_string(mu) + ",P_" + std::to_string(nu) + "]";
      out.push_back(id);
    }
  // [M^{ab}, P_mu] = delta^a_mu P^b - delta^b_mu P^a
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int mu = 0; mu < 4; ++mu) {
        BracketIdentity id;
        id.lhs1 = GeneratorId::m(a, b);
        id.lhs2 = GeneratorId::p(mu);
        id.name = "[M^" + std::to_string(a) + std::to_string(b) + ",P_" + std::to_string(mu) + "]";
        if (mu == a) id.rhs.push_back({rhs_sign * metric_diag(b), GeneratorId::p(b)});
        if (mu == b) id.rhs.push_back({-rhs_sign * metric_diag(a), GeneratorId::p(a)});
        out.push_back(id);
      }
  // [M^{ab}, M^{mn}] = g^{an} M^{mb} + g^{bm} M^{na} + g^{am} M^{bn} + g^{bn} M^{am}
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) pairs.emplace_back(a, b);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      auto [a, b] = pairs[i];
      auto [m, n] = pairs[j];
      BracketIdentity id;
      id.lhs1 = GeneratorId::m(a, b);
      id.lhs2 = GeneratorId::m(m, n);
      id.name = "[M^" + std::to_string(a) + std::to_string(b) + ",M^" + std::to_string(m) +
                std::to_string(n) + "]";
      if (a == n) id.rhs.push_back({rhs_sign * metric_diag(a), GeneratorId::m(m, b)});
      if (b == m) id.rhs.push_back({rhs_sign * metric_diag(b), GeneratorId::m(n, a)});
      if (a == m) id.rhs.push_back({rhs_sign * metric_diag(a), GeneratorId::m(b, n)});
      if (b == n) id.rhs.push_back({rhs_sign * metric_diag(b), GeneratorId::m(a, m)});
      out.push_back(id);
    }
  return out;
}

namespace {

Cxd grad_component(const GenGradients& g, const GeneratorId& id, std::size_t coord) {
  if (id.type == GeneratorId::Type::P) return g.dP[coord][std::size_t(id.a)];
  return g.dM[coord][std::size_t(id.a)][std::size_t(id.b)];
}

}  // namespace

Cxd bracket_of_generators(const GenGradients& g, const GeneratorId& f, const GeneratorId& h) {
  const CoordLayout& lay = g.lay;
  Cxd out{};
  for (std::size_t j = 0; j < lay.n_particles; ++j)
    for (int mu = 0; mu < 4; ++mu) {
      std::size_t iq = lay.part_x(j, mu), ip = lay.part_p(j, mu);
      out += grad_component(g, f, iq) * grad_component(g, h, ip) -
             grad_component(g, f, ip) * grad_component(g, h, iq);
    }
  for (std::size_t m = 0; m < lay.n_modes; ++m)
    for (int mu = 0; mu < 4; ++mu) {
      std::size_t iq = lay.mode_q(m, mu), ip = lay.mode_p(m, mu);
      out += grad_component(g, f, iq) * grad_component(g, h, ip) -
             grad_component(g, f, ip) * grad_component(g, h, iq);
    }
  return out;
}

Cxd generator_value(const GeneratorSet& set, const GeneratorId& id) {
  if (id.type == GeneratorId::Type::P) return set.P[id.a];
  return set.M[std::size_t(id.a)][std::size_t(id.b)];
}

bool BracketReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

double BracketReport::max_residual() const {
  double r = 0.0;
  for (const auto& c : checks) r = std::max(r, c.residual);
  return r;
}

void BracketReport::add(const std::string& name, double residual, double tol) {
  checks.push_back({name, residual, tol, residual <= tol});
}

std::string BracketReport::to_json() const {
  nlohmann::json j;
  j["kind"] = kind;
  j["generator_scale"] = generator_scale;
  j["lattice_spacing"] = lattice_spacing;
  j["point_digest"] = point_digest;
  j["pass"] = all_pass();
  j["max_residual"] = max_residual();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  return j.dump(2);
}

BracketReport verify_lie_algebra(const PhaseSpacePoint& pt, const FormOfDynamics& form, double tol,
                                 GeneratorBasis basis) {
  GenGradients grads = generator_gradients(pt, form, basis);
  double scale = grads.value.scale();

  BracketReport rep;
  rep.kind = "lie-algebra-closure";
  rep.generator_scale = scale;
  rep.lattice_spacing = pt.field.spacing;
  rep.point_digest = point_digest(pt);
  for (const auto& id : closure_identities()) {
    Cxd lhs = bracket_of_generators(grads, id.lhs1, id.lhs2);
    Cxd rhs{};
    for (const auto& t : id.rhs) rhs += t.coeff * generator_value(grads.value, t.gen);
    rep.add(id.name, abs(lhs - rhs) / scale, tol);
  }
  return rep;
}

BracketReport verify_currie(const PhaseSpacePoint& pt, const FormOfDynamics& form, double tol,
                            double tol_instant) {
  GenGradients grads = generator_gradients(pt, form, GeneratorBasis::General);
  const CoordLayout& lay = grads.lay;

  BracketReport rep;
  rep.kind = "currie-world-line-conditions";
  rep.generator_scale = grads.value.scale();
  rep.lattice_spacing = pt.field.spacing;
  rep.point_digest = point_digest(pt);

  TPoint<double> tp = make_tpoint<double>(pt);
  for (std::size_t j = 0; j < pt.particles.size(); ++j) {
    const auto& ps = pt.particles[j];
    FourVector grad = form.grad(ps.x);
    CVec4d pi_up = kinetic_momentum_upper(tp, j);
    Cxd denom{};
    for (int al = 0; al < 4; ++al) denom += pi_up[al] * grad[al];

    // measured [q^mu_j, F] = dF/dp_{j mu}
    std::array<std::array<Cxd, 4>, 4> qP{};  // qP[mu][gamma] = [q^mu_j, P^gamma]
    for (int mu = 0; mu < 4; ++mu) {
      std::size_t ip = lay.part_p(j, mu);
      for (int gamma = 0; gamma < 4; ++gamma)
        qP[std::size_t(mu)][std::size_t(gamma)] = metric_diag(gamma) * grads.dP[ip][std::size_t(gamma)];
    }

    // [q^mu_j, P^gamma] = g^{mu gamma} - g^{gamma nu} dg/dq^nu pi^mu / (pi.dg)
    for (int mu = 0; mu < 4; ++mu)
      for (int gamma = 0; gamma < 4; ++gamma) {
        Cxd rhs = Cxd(mu == gamma ? metric_diag(mu) : 0.0, 0.0);
        double grad_up_gamma = metric_diag(gamma) * grad[gamma];
        rhs -= (pi_up[mu] * grad_up_gamma) / denom;
        double resid = abs(qP[std::size_t(mu)][std::size_t(gamma)] - rhs);
        rep.add("pos-trans j" + std::to_string(j) + " mu" + std::to_string(mu) + " g" +
                    std::to_string(gamma),
                resid, tol);
      }

    // rotation contraction: [q^mu_j, M^{ab}] = (q^a d^b_g - q^b d^a_g)[q^mu_j, P^g]
    for (int mu = 0; mu < 4; ++mu) {
      std::size_t ip = lay.part_p(j, mu);
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          Cxd lhs = grads.dM[ip][std::size_t(a)][std::size_t(b)];
          Cxd rhs = ps.x[a] * qP[std::size_t(mu)][std::size_t(b)] -
                    ps.x[b] * qP[std::size_t(mu)][std::size_t(a)];
          rep.add("pos-rot j" + std::to_string(j) + " mu" + std::to_string(mu) + " M" +
                      std::to_string(a) + std::to_string(b),
                  abs(lhs - rhs), tol);
        }
    }

    // instant form: spatial [q^a_j, P^b] = -delta^{ab} in this bracket convention
    if (form.kind == FormOfDynamics::Kind::Instant) {
      for (int a = 1; a < 4; ++a)
        for (int b = 1; b < 4; ++b) {
          Cxd expect = Cxd(a == b ? -1.0 : 0.0, 0.0);
          rep.add("instant j" + std::to_string(j) + " q" + std::to_string(a) + " P" +
                      std::to_string(b),
                  abs(qP[std::size_t(a)][std::size_t(b)] - expect), tol_instant);
        }
    }
  }
  return rep;
}

BracketReport verify_kernel_algebra(double tol) {
  BracketReport rep;
  rep.kind = "kernel-structure-constants";
  auto knl_p = [](int nu) { return kernel_translation(nu); };
  auto knl_m = [](int a, int b) { return kernel_rotation(a, b); };

  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) {
      OperatorKernel c = kernel_commutator(knl_p(mu), knl_p(nu));
      rep.add("[P_" + std::to_string(mu) + ",P_" + std::to_string(nu) + "]", c.max_abs(), tol);
    }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int mu = 0; mu < 4; ++mu) {
        OperatorKernel c = kernel_commutator(knl_m(a, b), knl_p(mu));
        OperatorKernel rhs;
        if (mu == a) {
          OperatorKernel t = knl_p(b);
          t *= Cxd(metric_diag(b), 0.0);
          rhs += t;
        }
        if (mu == b) {
          OperatorKernel t = knl_p(a);
          t *= Cxd(-metric_diag(a), 0.0);
          rhs += t;
        }
        rep.add("[M^" + std::to_string(a) + std::to_string(b) + ",P_" + std::to_string(mu) + "]",
                (c - rhs).max_abs(), tol);
      }
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) pairs.emplace_back(a, b);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      auto [a, b] = pairs[i];
      auto [m, n] = pairs[j];
      OperatorKernel c = kernel_commutator(knl_m(a, b), knl_m(m, n));
      OperatorKernel rhs;
      auto addterm = [&](int i1, int i2, double coeff) {
        OperatorKernel t = knl_m(i1, i2);  // antisymmetric in (i1,i2) by construction
        t *= Cxd(coeff, 0.0);
        rhs += t;
      };
      if (a == n) addterm(m, b, metric_diag(a));
      if (b == m) addterm(n, a, metric_diag(b));
      if (a == m) addterm(b, n, metric_diag(a));
      if (b == n) addterm(a, m, metric_diag(b));
      rep.add("[M^" + std::to_string(a) + std::to_string(b) + ",M^" + std::to_string(m) +
                  std::to_string(n) + "]",
              (c - rhs).max_abs(), tol);
    }
  return rep;
}

std::string point_digest(const PhaseSpacePoint& pt) {
  // FNV-1a over the raw coordinate bytes
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffull;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& ps : pt.particles) {
    feed(ps.mass);
    feed(ps.charge);
    for (int i = 0; i < 4; ++i) feed(ps.x[i]);
    for (int i = 0; i < 4; ++i) feed(ps.p[i]);
  }
  for (const auto& m : pt.field.modes) {
    for (int i = 0; i < 4; ++i) feed(m.k[i]);
    for (int i = 0; i < 4; ++i) {
      feed(m.Q[i].re);
      feed(m.Q[i].im);
      feed(m.P[i].re);
      feed(m.P[i].im);
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace relforms
