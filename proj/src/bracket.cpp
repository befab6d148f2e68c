#include "relforms/bracket.hpp"

#include <cmath>

namespace relforms {

Cxd bracket_contract(const PhaseGradient& f, const PhaseGradient& g, const CoordLayout& lay) {
  Cxd out{};
  for (std::size_t j = 0; j < lay.n_particles; ++j)
    for (int mu = 0; mu < 4; ++mu) {
      std::size_t iq = lay.part_x(j, mu), ip = lay.part_p(j, mu);
      out += f[iq] * g[ip] - f[ip] * g[iq];
    }
  for (std::size_t m = 0; m < lay.n_modes; ++m)
    for (int mu = 0; mu < 4; ++mu) {
      std::size_t iq = lay.mode_q(m, mu), ip = lay.mode_p(m, mu);
      out += f[iq] * g[ip] - f[ip] * g[iq];
    }
  return out;
}

PhaseGradient gradient_fd(const PhaseSpacePoint& pt, const PhaseFunctional& f, double rel_step) {
  CoordLayout lay = layout_of(pt);
  PhaseGradient grad(lay.count());

  auto perturb = [&](std::size_t c, double delta) {
    PhaseSpacePoint q = pt;
    std::size_t block = c / 8;
    int slot = int(c % 8);
    if (block < q.particles.size()) {
      auto& ps = q.particles[block];
      if (slot < 4) ps.x[slot] += delta;
      else ps.p[slot - 4] += delta;
    } else {
      auto& m = q.field.modes[block - q.particles.size()];
      double s = delta / std::sqrt(m.weight);
      if (slot < 4) m.Q[slot].re += s;
      else m.P[slot - 4].re += s;
    }
    return f(q);
  };
  auto coord_scale = [&](std::size_t c) {
    std::size_t block = c / 8;
    int slot = int(c % 8);
    double v;
    if (block < pt.particles.size()) {
      const auto& ps = pt.particles[block];
      v = slot < 4 ? ps.x[slot] : ps.p[slot - 4];
    } else {
      const auto& m = pt.field.modes[block - pt.particles.size()];
      v = (slot < 4 ? m.Q[slot].re : m.P[slot - 4].re) * std::sqrt(m.weight);
    }
    return std::max(std::abs(v), 1.0);
  };

  for (std::size_t c = 0; c < lay.count(); ++c) {
    double h = rel_step * coord_scale(c);
    auto central = [&](double step) {
      Cxd plus = perturb(c, step);
      Cxd minus = perturb(c, -step);
      return (plus - minus) / (2.0 * step);
    };
    Cxd d1 = central(h);
    Cxd d2 = central(h / 2.0);
    grad[c] = (4.0 * d2 - d1) * (1.0 / 3.0);
    if (!std::isfinite(grad[c].re) || !std::isfinite(grad[c].im))
      throw VerificationError("non-finite derivative in bracket engine");
  }
  return grad;
}

Cxd poisson_bracket(const PhaseFunctional& f, const PhaseFunctional& g, const PhaseSpacePoint& pt) {
  return bracket_contract(gradient_fd(pt, f), gradient_fd(pt, g), layout_of(pt));
}

}  // namespace relforms
