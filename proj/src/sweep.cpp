#include "relforms/sweep.hpp"

#include <cmath>
#include <json.hpp>
#include <thread>

#include "relforms/generators.hpp"
#include "relforms/scenario.hpp"
#include "relforms/verify.hpp"

namespace relforms {

double fitted_order(const std::vector<double>& h, const std::vector<double>& resid) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(h[i]);
    double y = std::log(std::max(resid[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = double(n) * sxx - sx * sx;
  return (double(n) * sxy - sx * sy) / denom;
}

bool SweepSummary::all_ok() const {
  for (const auto& c : cells)
    if (!c.ok) return false;
  return true;
}

std::string SweepSummary::to_json() const {
  nlohmann::json j;
  j["order"] = order;
  j["ok"] = all_ok();
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells)
    j["cells"].push_back({{"label", c.label},
                          {"spacing", c.spacing},
                          {"residual", c.residual},
                          {"ok", c.ok},
                          {"error", c.error}});
  return j.dump(2);
}

double field_sector_closure_residual(int n_axis0, double h_axis0, std::uint64_t seed) {
  LatticeSpec spec;
  spec.dims = {n_axis0, 3, 3, 3};
  spec.spacing = {h_axis0, 0.4, 0.4, 0.4};
  spec.init_q = {AmplitudeInit::Kind::Gaussian, 0.3, {0.6, 0.0, 0.0, 0.0}, seed};
  spec.init_p = {AmplitudeInit::Kind::Constant, 0.2, {}, seed + 1};
  PhaseSpacePoint pt;
  pt.field = build_lattice(spec);

  GenGradients grads = generator_gradients(pt, FormOfDynamics::instant(), GeneratorBasis::General);
  double scale = grads.value.scale();
  double worst = 0.0;
  for (const auto& id : closure_identities()) {
    Cxd lhs = bracket_of_generators(grads, id.lhs1, id.lhs2);
    Cxd rhs{};
    for (const auto& t : id.rhs) rhs += t.coeff * generator_value(grads.value, t.gen);
    worst = std::max(worst, abs(lhs - rhs) / scale);
  }
  return worst;
}

SweepSummary sweep_field_closure(const std::vector<int>& levels, double h0, std::uint64_t seed,
                                 int jobs) {
  SweepSummary out;
  out.cells.resize(levels.size());
  const double extent = h0 * (levels.front() - 1);

  auto work = [&](std::size_t i) {
    SweepCell cell;
    int n = levels[i];
    double h = extent / (n - 1);
    cell.label = "n" + std::to_string(n);
    cell.spacing = h;
    try {
      cell.residual = field_sector_closure_residual(n, h, seed);
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
    }
    out.cells[i] = cell;
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < levels.size(); ++i) work(i);
  } else {
    // static striping; each cell writes only its own slot, so the summary is
    // byte-identical for any worker count
    std::vector<std::thread> pool;
    std::size_t count = levels.size();
    std::size_t stripe = (count + std::size_t(jobs) - 1) / std::size_t(jobs);
    for (int t = 0; t < jobs; ++t) {
      std::size_t lo = std::size_t(t) * stripe;
      std::size_t hi = std::min(count, lo + stripe);
      if (lo >= hi) continue;
      pool.emplace_back([&work, lo, hi]() {
        for (std::size_t i = lo; i < hi; ++i) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> hs, rs;
  for (const auto& c : out.cells)
    if (c.ok) {
      hs.push_back(c.spacing);
      rs.push_back(c.residual);
    }
  if (hs.size() >= 2) out.order = fitted_order(hs, rs);
  return out;
}

}  // namespace relforms
