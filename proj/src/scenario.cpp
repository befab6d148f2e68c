#include "relforms/scenario.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace relforms {

using nlohmann::json;

namespace {

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ValidationError("unknown key '" + it.key() + "' in " + where);
  }
}

AmplitudeInit parse_init(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "amplitude", "sigma", "seed"});
  AmplitudeInit init;
  std::string kind = j.value("kind", "zero");
  if (kind == "zero") init.kind = AmplitudeInit::Kind::Zero;
  else if (kind == "constant") init.kind = AmplitudeInit::Kind::Constant;
  else if (kind == "affine") init.kind = AmplitudeInit::Kind::Affine;
  else if (kind == "gaussian") init.kind = AmplitudeInit::Kind::Gaussian;
  else throw ValidationError(where + ".kind must be zero|constant|affine|gaussian");
  init.amplitude = j.value("amplitude", 0.0);
  if (j.contains("sigma")) {
    auto s = j.at("sigma");
    if (!s.is_array() || s.size() != 4) throw ValidationError(where + ".sigma needs 4 entries");
    for (int i = 0; i < 4; ++i) init.sigma[std::size_t(i)] = s[std::size_t(i)].get<double>();
  }
  init.seed = j.value("seed", std::uint64_t(1));
  return init;
}

json init_to_json(const AmplitudeInit& i) {
  const char* kinds[] = {"zero", "constant", "affine", "gaussian"};
  return json{{"kind", kinds[int(i.kind)]},
              {"amplitude", i.amplitude},
              {"sigma", i.sigma},
              {"seed", i.seed}};
}

}  // namespace

FramePath Scenario::frame_path() const {
  if (frame.kind == "static") return FramePath::statics();
  if (frame.kind == "instant-clock") return FramePath::instant_clock();
  if (frame.kind == "boost") return FramePath::boost(frame.rate, frame.axis, frame.offset);
  if (frame.kind == "rotation") return FramePath::rotation(frame.rate, frame.axis, frame.offset);
  throw ValidationError("unknown frame kind '" + frame.kind + "'");
}

Scenario load_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("parse error at line " + std::to_string(line_of_offset(text, e.byte)) +
                          ": " + e.what());
  }

  check_keys(j, "document",
             {"particles", "lattice", "form", "frame", "integrator", "seed"});
  Scenario sc;
  sc.seed = j.value("seed", std::uint64_t(1));

  if (j.contains("particles")) {
    for (std::size_t i = 0; i < j["particles"].size(); ++i) {
      const json& pj = j["particles"][i];
      std::string where = "particles[" + std::to_string(i) + "]";
      check_keys(pj, where, {"mass", "charge", "x0", "p_spatial"});
      ParticleSpec ps;
      ps.mass = pj.value("mass", 1.0);
      if (ps.mass <= 0.0) throw ValidationError(where + ".mass must be positive");
      ps.charge = pj.value("charge", 0.0);
      if (pj.contains("x0")) {
        if (pj["x0"].size() != 4) throw ValidationError(where + ".x0 needs 4 entries");
        for (int c = 0; c < 4; ++c) ps.x0[std::size_t(c)] = pj["x0"][std::size_t(c)].get<double>();
      }
      if (pj.contains("p_spatial")) {
        if (pj["p_spatial"].size() != 3) throw ValidationError(where + ".p_spatial needs 3 entries");
        for (int c = 0; c < 3; ++c) ps.p_spatial[std::size_t(c)] = pj["p_spatial"][std::size_t(c)].get<double>();
      }
      sc.particles.push_back(ps);
    }
  }

  if (j.contains("lattice")) {
    const json& lj = j["lattice"];
    check_keys(lj, "lattice", {"dims", "spacing", "offset", "paired", "init_q", "init_p"});
    if (lj.contains("dims")) {
      if (lj["dims"].size() != 4) throw ValidationError("lattice.dims needs 4 entries");
      for (int c = 0; c < 4; ++c) sc.lattice.dims[std::size_t(c)] = lj["dims"][std::size_t(c)].get<int>();
    }
    if (lj.contains("spacing")) {
      if (lj["spacing"].is_number()) {
        double h = lj["spacing"].get<double>();
        sc.lattice.spacing = {h, h, h, h};
      } else {
        if (lj["spacing"].size() != 4) throw ValidationError("lattice.spacing needs a number or 4 entries");
        for (int c = 0; c < 4; ++c) sc.lattice.spacing[std::size_t(c)] = lj["spacing"][std::size_t(c)].get<double>();
      }
      for (double h : sc.lattice.spacing)
        if (h <= 0.0) throw ValidationError("lattice.spacing must be positive");
    }
    sc.lattice.offset = lj.value("offset", 0.5);
    sc.lattice.paired = lj.value("paired", false);
    if (lj.contains("init_q")) sc.lattice.init_q = parse_init(lj["init_q"], "lattice.init_q");
    if (lj.contains("init_p")) sc.lattice.init_p = parse_init(lj["init_p"], "lattice.init_p");
  }

  if (j.contains("form")) {
    const json& fj = j["form"];
    check_keys(fj, "form", {"kind", "A"});
    std::string kind = fj.value("kind", "instant");
    if (kind == "instant") sc.form = FormOfDynamics::instant();
    else if (kind == "lightcone") sc.form = FormOfDynamics::light_cone();
    else if (kind == "hyperboloid") sc.form = FormOfDynamics::hyperboloid(fj.value("A", 1.0));
    else throw ValidationError("form.kind must be instant|lightcone|hyperboloid");
  }

  if (j.contains("frame")) {
    const json& fj = j["frame"];
    check_keys(fj, "frame", {"kind", "axis", "rate", "offset"});
    sc.frame.kind = fj.value("kind", "static");
    sc.frame.axis = fj.value("axis", 3);
    sc.frame.rate = fj.value("rate", 0.0);
    sc.frame.offset = fj.value("offset", 0.0);
    if (sc.frame.kind != "static" && sc.frame.kind != "boost" && sc.frame.kind != "rotation" &&
        sc.frame.kind != "instant-clock")
      throw ValidationError("frame.kind must be static|boost|rotation|instant-clock");
  }

  if (j.contains("integrator")) {
    const json& ij = j["integrator"];
    check_keys(ij, "integrator", {"method", "step", "tau_span", "drift_bound"});
    sc.integrator.method = ij.value("method", "rk4");
    if (sc.integrator.method != "rk4") throw ValidationError("integrator.method must be rk4");
    sc.integrator.step = ij.value("step", 1e-2);
    if (sc.integrator.step <= 0.0) throw ValidationError("integrator.step must be positive");
    if (ij.contains("tau_span")) {
      if (ij["tau_span"].size() != 2) throw ValidationError("integrator.tau_span needs 2 entries");
      sc.integrator.tau0 = ij["tau_span"][0].get<double>();
      sc.integrator.tau1 = ij["tau_span"][1].get<double>();
    }
    sc.integrator.drift_bound = ij.value("drift_bound", 1e-6);
  }

  // validate the lattice nodes now so bad configs fail on load
  build_lattice(sc.lattice);
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["seed"] = sc.seed;
  j["particles"] = json::array();
  for (const auto& p : sc.particles)
    j["particles"].push_back(json{{"mass", p.mass},
                                  {"charge", p.charge},
                                  {"x0", p.x0},
                                  {"p_spatial", p.p_spatial}});
  j["lattice"] = json{{"dims", sc.lattice.dims},
                      {"spacing", sc.lattice.spacing},
                      {"offset", sc.lattice.offset},
                      {"paired", sc.lattice.paired},
                      {"init_q", init_to_json(sc.lattice.init_q)},
                      {"init_p", init_to_json(sc.lattice.init_p)}};
  j["form"] = json{{"kind", sc.form.name()}, {"A", sc.form.A}};
  j["frame"] = json{{"kind", sc.frame.kind},
                    {"axis", sc.frame.axis},
                    {"rate", sc.frame.rate},
                    {"offset", sc.frame.offset}};
  j["integrator"] = json{{"method", sc.integrator.method},
                         {"step", sc.integrator.step},
                         {"tau_span", std::array<double, 2>{sc.integrator.tau0, sc.integrator.tau1}},
                         {"drift_bound", sc.integrator.drift_bound}};
  return j.dump(2);
}

namespace {

struct InitCoeffs {
  CVec4d base{};
  std::array<CVec4d, 4> slope{};  // slope[nu][mu]: coefficient of k_nu in component mu
};

InitCoeffs draw_coeffs(const AmplitudeInit& init) {
  Rng rng(init.seed * 0x9e3779b97f4a7c15ull + 0x1234567);
  InitCoeffs c;
  for (int mu = 0; mu < 4; ++mu)
    c.base[mu] = Cxd(init.amplitude * rng.uniform(-1.0, 1.0), init.amplitude * rng.uniform(-1.0, 1.0));
  for (int nu = 0; nu < 4; ++nu)
    for (int mu = 0; mu < 4; ++mu)
      c.slope[std::size_t(nu)][mu] =
          Cxd(init.amplitude * rng.uniform(-1.0, 1.0), init.amplitude * rng.uniform(-1.0, 1.0));
  return c;
}

CVec4d draw_amplitude(const AmplitudeInit& init, const FourVector& k, const InitCoeffs& c) {
  CVec4d v{};
  switch (init.kind) {
    case AmplitudeInit::Kind::Zero:
      return v;
    case AmplitudeInit::Kind::Constant:
      return c.base;
    case AmplitudeInit::Kind::Affine: {
      v = c.base;
      for (int nu = 0; nu < 4; ++nu)
        for (int mu = 0; mu < 4; ++mu) v[mu] += c.slope[std::size_t(nu)][mu] * k[nu];
      return v;
    }
    case AmplitudeInit::Kind::Gaussian: {
      double arg = 0.0;
      for (int d = 0; d < 4; ++d)
        if (init.sigma[std::size_t(d)] > 0.0) {
          double r = k[d] / init.sigma[std::size_t(d)];
          arg += r * r;
        }
      double env = std::exp(-arg);
      for (int mu = 0; mu < 4; ++mu) v[mu] = c.base[mu] * env;
      return v;
    }
  }
  return v;
}

}  // namespace

ModeLattice build_lattice(const LatticeSpec& spec) {
  ModeLattice lat;
  if (spec.dims[0] <= 0) return lat;  // empty lattice

  std::vector<int> dims(spec.dims.begin(), spec.dims.end());
  std::vector<double> spacing(spec.spacing.begin(), spec.spacing.end());
  std::vector<double> offsets(4);
  for (int d = 0; d < 4; ++d) {
    // even axes are symmetric at half-integer coordinates; odd axes get the
    // global offset so no node lands on the null cone
    offsets[std::size_t(d)] = (dims[std::size_t(d)] % 2 == 0) ? 0.0 : spec.offset;
  }
  auto grid = std::make_shared<Grid>(Grid::regular(dims, spacing, offsets));

  lat.grid = grid;
  lat.spacing = spacing[0];
  lat.paired = spec.paired;
  lat.modes.resize(std::size_t(grid->total));
  lat.mirror.resize(std::size_t(grid->total));

  for (int m = 0; m < grid->total; ++m) {
    auto idx = grid->unflatten(m);
    FieldMode fm;
    double w = 1.0;
    for (int d = 0; d < 4; ++d) {
      fm.k[d] = grid->coords[std::size_t(d)][std::size_t(idx[std::size_t(d)])];
      w *= spacing[std::size_t(d)];
    }
    fm.weight = w;
    double kk = contract(fm.k, flip_index(fm.k));
    if (std::abs(kk) < 1e-12)
      throw ValidationError("lattice mode on the null cone (k.k = 0); shift the offset");
    fm.metric_sign = kk > 0.0 ? 1 : -1;
    lat.modes[std::size_t(m)] = fm;
    lat.mirror[std::size_t(m)] = grid->mirror(m);
  }

  if (spec.paired) {
    for (int m = 0; m < grid->total; ++m)
      if (lat.mirror[std::size_t(m)] < 0)
        throw ValidationError("paired lattice requires a negation-symmetric grid (even dims)");
  }

  // amplitudes
  auto cq = draw_coeffs(spec.init_q);
  auto cp = draw_coeffs(spec.init_p);
  for (std::size_t m = 0; m < lat.modes.size(); ++m) {
    lat.modes[m].Q = draw_amplitude(spec.init_q, lat.modes[m].k, cq);
    lat.modes[m].P = draw_amplitude(spec.init_p, lat.modes[m].k, cp);
  }
  if (spec.paired) {
    // conjugate amplitudes at -k make the potential real
    for (std::size_t m = 0; m < lat.modes.size(); ++m) {
      int mm = lat.mirror[m];
      if (int(m) < mm) continue;
      for (int mu = 0; mu < 4; ++mu) {
        lat.modes[m].Q[mu] = conj(lat.modes[std::size_t(mm)].Q[mu]);
        lat.modes[m].P[mu] = conj(lat.modes[std::size_t(mm)].P[mu]);
      }
    }
  }
  return lat;
}

PhaseSpacePoint build_point(const Scenario& sc) {
  PhaseSpacePoint pt;
  pt.field = build_lattice(sc.lattice);
  for (const auto& spec : sc.particles) {
    ParticleState ps;
    ps.mass = spec.mass;
    ps.charge = spec.charge;
    for (int c = 0; c < 4; ++c) ps.x[c] = spec.x0[std::size_t(c)];
    ps.p[0] = spec.mass;  // placeholder; projection fixes it
    for (int c = 0; c < 3; ++c) ps.p[c + 1] = -spec.p_spatial[std::size_t(c)];  // covariant storage
    pt.particles.push_back(ps);
  }
  return pt;
}

PhaseSpacePoint randomize_point(const PhaseSpacePoint& base, Rng& rng, double pos_scale,
                                double mom_scale, double amp_scale) {
  PhaseSpacePoint out = base;
  for (auto& ps : out.particles) {
    for (int c = 0; c < 4; ++c) ps.x[c] += pos_scale * rng.uniform(-1.0, 1.0);
    for (int c = 1; c < 4; ++c) ps.p[c] += mom_scale * rng.uniform(-1.0, 1.0);
  }
  auto& modes = out.field.modes;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    int mm = out.field.mirror.empty() ? -1 : out.field.mirror[m];
    if (out.field.paired && mm >= 0 && int(m) > mm) continue;
    for (int mu = 0; mu < 4; ++mu) {
      modes[m].Q[mu] += Cxd(amp_scale * rng.uniform(-1.0, 1.0), amp_scale * rng.uniform(-1.0, 1.0));
      modes[m].P[mu] += Cxd(amp_scale * rng.uniform(-1.0, 1.0), amp_scale * rng.uniform(-1.0, 1.0));
    }
  }
  if (out.field.paired) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      int mm = out.field.mirror[m];
      if (int(m) <= mm) continue;
      for (int mu = 0; mu < 4; ++mu) {
        modes[m].Q[mu] = conj(modes[std::size_t(mm)].Q[mu]);
        modes[m].P[mu] = conj(modes[std::size_t(mm)].P[mu]);
      }
    }
  }
  return out;
}

}  // namespace relforms
