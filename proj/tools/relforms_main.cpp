// Command-line front end: simulate trajectories, run the verification suites,
// sweep refinement levels, and pretty-print reports.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "relforms/distributions.hpp"
#include "relforms/dynamics.hpp"
#include "relforms/frame_transform.hpp"
#include "relforms/reduction.hpp"
#include "relforms/report.hpp"
#include "relforms/scenario.hpp"
#include "relforms/sweep.hpp"
#include "relforms/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIntegration = 3;
constexpr int kExitVerification = 4;
constexpr int kExitIo = 5;

std::string output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("RELFORMS_OUT_DIR")) return env;
  return ".";
}

using relforms::Scenario;

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir;
  int points = 20;
  double tol = 1e-6;
  int refine = 3;
  int jobs = 1;
  std::uint64_t seed = 1;
};

int cmd_simulate(const CommonArgs& args) {
  Scenario sc = relforms::load_scenario_file(args.scenario_path);
  if (args.seed != 1) sc.seed = args.seed;
  relforms::PhaseSpacePoint start =
      relforms::project_to_constraints(relforms::build_point(sc), sc.form);

  relforms::IntegrateOptions opts;
  opts.step = sc.integrator.step;
  opts.tau0 = sc.integrator.tau0;
  opts.tau1 = sc.integrator.tau1;
  opts.drift_bound = sc.integrator.drift_bound;
  relforms::Trajectory traj = relforms::integrate_covariant(start, opts);

  std::string dir = output_dir(args.out_dir);
  std::string base = dir + "/trajectory";
  relforms::write_trajectory_csv(traj, base, true);

  relforms::RunManifest man;
  man.scenario_digest = relforms::scenario_digest(sc);
  man.seed = sc.seed;
  man.output_path = base + ".csv";
  relforms::write_text_file(dir + "/run_manifest.json", man.to_json());
  std::cout << "wrote " << base << ".csv (" << traj.samples.size()
            << " samples, max drift " << traj.max_constraint_drift << ")\n";
  return kExitPass;
}

int emit_report(const CommonArgs& args, const Scenario& sc, const std::string& name,
                const std::string& json, bool pass) {
  std::string dir = output_dir(args.out_dir);
  nlohmann::json j = nlohmann::json::parse(json);
  relforms::RunManifest man;
  man.scenario_digest = relforms::scenario_digest(sc);
  man.seed = args.seed;
  man.tolerance = args.tol;
  man.output_path = dir + "/" + name + ".json";
  j["manifest"] = nlohmann::json::parse(man.to_json());
  relforms::write_text_file(man.output_path, j.dump(2));
  std::cout << name << ": " << (pass ? "PASS" : "FAIL") << " (report " << man.output_path << ")\n";
  return pass ? kExitPass : kExitVerification;
}

std::vector<relforms::PhaseSpacePoint> sample_points(const Scenario& sc, int count,
                                                     std::uint64_t seed) {
  relforms::PhaseSpacePoint base = relforms::build_point(sc);
  relforms::Rng rng(seed);
  std::vector<relforms::PhaseSpacePoint> pts;
  for (int i = 0; i < count; ++i)
    pts.push_back(relforms::project_to_constraints(
        relforms::randomize_point(base, rng, 0.15, 0.2, 0.02), sc.form));
  return pts;
}

int cmd_verify(const std::string& kind, const CommonArgs& args) {
  if (kind == "distributions") {
    auto r1 = relforms::reduce_covariant_to_3d(1);
    auto r2 = relforms::reduce_covariant_to_3d(2);
    auto bad = relforms::reduce_covariant_to_3d(1, true);
    bool pass = relforms::reduction_variants_agree(r1, r2) && !bad.pass;
    nlohmann::json j;
    j["kind"] = "distribution-reduction";
    j["variant1"] = nlohmann::json::parse(r1.to_json());
    j["variant2"] = nlohmann::json::parse(r2.to_json());
    j["negative_control"] = nlohmann::json::parse(bad.to_json());
    j["pass"] = pass;
    Scenario sc;  // no scenario input needed
    return emit_report(args, sc, "verify_distributions", j.dump(2), pass);
  }

  Scenario sc = relforms::load_scenario_file(args.scenario_path);
  if (kind == "algebra" || kind == "currie") {
    auto pts = sample_points(sc, args.points, args.seed);
    nlohmann::json j;
    j["kind"] = kind;
    j["checks"] = nlohmann::json::array();
    bool pass = true;
    double worst = 0.0;
    for (const auto& pt : pts) {
      relforms::BracketReport rep =
          kind == "algebra" ? relforms::verify_lie_algebra(pt, sc.form, args.tol)
                            : relforms::verify_currie(pt, sc.form, args.tol);
      pass = pass && rep.all_pass();
      worst = std::max(worst, rep.max_residual());
      j["checks"].push_back({{"digest", rep.point_digest},
                             {"max_residual", rep.max_residual()},
                             {"pass", rep.all_pass()}});
    }
    if (kind == "algebra") {
      relforms::BracketReport kern = relforms::verify_kernel_algebra();
      pass = pass && kern.all_pass();
      j["kernel_exact"] = kern.all_pass();
    }
    j["max_residual"] = worst;
    j["points"] = pts.size();
    j["pass"] = pass;
    return emit_report(args, sc, "verify_" + kind, j.dump(2), pass);
  }
  if (kind == "conservation") {
    relforms::PhaseSpacePoint start =
        relforms::project_to_constraints(relforms::build_point(sc), sc.form);
    relforms::FramePath frame = sc.frame_path();
    relforms::IntegrateOptions opts;
    opts.step = sc.integrator.step;
    opts.tau0 = sc.integrator.tau0;
    opts.tau1 = sc.integrator.tau1;
    relforms::Trajectory traj = relforms::integrate_routhian(start, sc.form, frame, opts);
    relforms::ConservationReport rep = relforms::conservation_check(traj, sc.form, frame);
    bool pass = rep.pass(args.tol);
    nlohmann::json j;
    j["kind"] = "conservation";
    j["momentum_drift"] = rep.momentum_drift;
    j["angular_drift"] = rep.angular_drift;
    j["g_drift"] = rep.g_drift;
    j["pass"] = pass;
    return emit_report(args, sc, "verify_conservation", j.dump(2), pass);
  }
  if (kind == "equivalence") {
    // one physical scenario integrated under two parametrizations and
    // compared world line by world line at common coordinate times
    relforms::PhaseSpacePoint start =
        relforms::project_to_constraints(relforms::build_point(sc), relforms::FormOfDynamics::instant());
    relforms::IntegrateOptions opts;
    opts.step = sc.integrator.step;
    opts.tau0 = sc.integrator.tau0;
    opts.tau1 = sc.integrator.tau1;
    opts.form = relforms::FormOfDynamics::instant();
    opts.frame = relforms::FramePath::instant_clock();
    relforms::Trajectory ta = relforms::integrate_covariant(start, opts);

    relforms::PhaseSpacePoint start_lc =
        relforms::project_to_constraints(start, relforms::FormOfDynamics::light_cone());
    relforms::IntegrateOptions opts_lc = opts;
    opts_lc.form = relforms::FormOfDynamics::light_cone();
    relforms::Trajectory tb = relforms::integrate_covariant(start_lc, opts_lc);

    double worst = 0.0;
    for (std::size_t j = 0; j < start.particles.size(); ++j) {
      double t_lo = std::max(ta.samples[2].point.particles[j].x[0],
                             tb.samples[2].point.particles[j].x[0]);
      double t_hi = std::min(ta.samples[ta.samples.size() - 3].point.particles[j].x[0],
                             tb.samples[tb.samples.size() - 3].point.particles[j].x[0]);
      if (t_hi < t_lo) std::swap(t_lo, t_hi);
      for (int s = 0; s <= 20; ++s) {
        double t = t_lo + (t_hi - t_lo) * s / 20.0;
        auto xa = relforms::world_line_at_time(ta, j, t);
        auto xb = relforms::world_line_at_time(tb, j, t);
        for (int c = 1; c < 4; ++c) worst = std::max(worst, std::abs(xa[c] - xb[c]));
      }
    }
    bool pass = worst <= args.tol;
    nlohmann::json j;
    j["kind"] = "equivalence";
    j["max_world_line_deviation"] = worst;
    j["pass"] = pass;
    return emit_report(args, sc, "verify_equivalence", j.dump(2), pass);
  }
  throw relforms::ValidationError("unknown verify kind: " + kind);
}

int cmd_sweep(const CommonArgs& args) {
  std::vector<int> levels;
  int n = 5;
  for (int i = 0; i < args.refine; ++i) {
    levels.push_back(n);
    n = 2 * n - 1;
  }
  relforms::SweepSummary summary = relforms::sweep_field_closure(levels, 0.5, args.seed, args.jobs);
  std::string dir = output_dir(args.out_dir);
  relforms::write_text_file(dir + "/sweep.json", summary.to_json());
  std::cout << "sweep order " << summary.order << " (report " << dir << "/sweep.json)\n";
  return summary.all_ok() ? kExitPass : kExitVerification;
}

int cmd_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw relforms::IoError("cannot open report: " + path);
  nlohmann::json j;
  in >> j;
  bool pass = j.value("pass", false);
  std::cout << "report " << path << ": " << (pass ? "PASS" : "FAIL") << "\n";
  for (const char* key : {"max_residual", "order", "momentum_drift", "angular_drift"})
    if (j.contains(key)) std::cout << "  " << key << " = " << j[key].dump() << "\n";
  return pass ? kExitPass : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covariant constrained dynamics and Poincare generator verification"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string verify_kind, report_path;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    if (needs_scenario)
      cmd->add_option("--scenario", args.scenario_path, "scenario JSON path")->required();
    else
      cmd->add_option("--scenario", args.scenario_path, "scenario JSON path");
    cmd->add_option("--out", args.out_dir, "output directory (default $RELFORMS_OUT_DIR or .)");
    cmd->add_option("--points", args.points, "number of verification points");
    cmd->add_option("--tol", args.tol, "tolerance");
    cmd->add_option("--refine", args.refine, "refinement levels");
    cmd->add_option("--jobs", args.jobs, "parallel workers");
    cmd->add_option("--seed", args.seed, "seed");
  };

  CLI::App* sim = app.add_subcommand("simulate", "integrate a scenario and write the CSV");
  add_common(sim, true);

  CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("kind", verify_kind, "algebra|currie|distributions|conservation|equivalence")
      ->required();
  add_common(ver, false);

  CLI::App* sw = app.add_subcommand("sweep", "refinement sweep of the field-sector closure");
  add_common(sw, false);

  CLI::App* rep = app.add_subcommand("report", "summarize an existing JSON report");
  rep->add_option("path", report_path, "report path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(args);
    if (ver->parsed()) {
      if ((verify_kind == "algebra" || verify_kind == "currie" || verify_kind == "conservation" ||
           verify_kind == "equivalence") &&
          args.scenario_path.empty())
        throw relforms::ValidationError("verify " + verify_kind + " needs --scenario");
      return cmd_verify(verify_kind, args);
    }
    if (sw->parsed()) return cmd_sweep(args);
    if (rep->parsed()) return cmd_report(report_path);
  } catch (const relforms::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const relforms::IntegrationError& e) {
    std::cerr << "integration error: " << e.what() << "\n";
    return kExitIntegration;
  } catch (const relforms::VerificationError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return kExitVerification;
  } catch (const relforms::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitPass;
}
