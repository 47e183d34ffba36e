// Command-line front end: regenerates the fidelity/probability curves as CSV
// (with JSON provenance sidecars), runs single teleportation scenarios, and
// evaluates cavity feasibility presets.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "CLI11.hpp"

#include "catport/catport.hpp"

namespace {

using catport::ComplexScalar;

// The six input-state flags shared by fig1 and teleport: either a point on the
// input sphere (--theta/--phi) or explicit coefficients (--x-re et al.).
struct InputFlags {
  double theta = M_PI; // even cat
  double phi = 0.0;
  double x_re = 1.0, x_im = 0.0;
  double y_re = 1.0, y_im = 0.0;
  CLI::Option* xy_opts[4] = {nullptr, nullptr, nullptr, nullptr};

  void attach(CLI::App* cmd) {
    auto* ot =
        cmd->add_option("--theta", theta, "input point: polar angle (pi = even cat, 0 = odd)")
            ->capture_default_str();
    auto* op = cmd->add_option("--phi", phi, "input point: azimuthal angle")->capture_default_str();
    xy_opts[0] = cmd->add_option("--x-re", x_re, "Re of the |+alpha> coefficient");
    xy_opts[1] = cmd->add_option("--x-im", x_im, "Im of the |+alpha> coefficient");
    xy_opts[2] = cmd->add_option("--y-re", y_re, "Re of the |-alpha> coefficient");
    xy_opts[3] = cmd->add_option("--y-im", y_im, "Im of the |-alpha> coefficient");
    for (auto* o : xy_opts) {
      o->excludes(ot);
      o->excludes(op);
    }
  }

  bool explicit_xy() const {
    for (auto* o : xy_opts)
      if (o->count()) return true;
    return false;
  }

  std::pair<ComplexScalar, ComplexScalar> resolve(ComplexScalar alpha) const {
    if (explicit_xy()) return {ComplexScalar(x_re, x_im), ComplexScalar(y_re, y_im)};
    return catport::cat_from_bloch(alpha, theta, phi);
  }
};

void attach_policy(CLI::App* cmd, catport::TruncationPolicy& policy) {
  cmd->add_option("--epsilon", policy.epsilon, "photon-number truncation tail bound")
      ->capture_default_str();
  cmd->add_option("--nmax-cap", policy.n_max_cap, "hard cap on the photon-number cutoff")
      ->capture_default_str();
}

const std::map<std::string, catport::Schedule> kSchedules = {
    {"blind", catport::Schedule::Blind}, {"oracle", catport::Schedule::Oracle}};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"superposed-coherent-state teleportation toolkit"};
  app.require_subcommand(1);

  // fig1 — correction fidelity and atomic excitation versus time
  auto* fig1 = app.add_subcommand("fig1", "fidelity/excitation time trace (CSV)");
  catport::Fig1Params f1;
  double f1_alpha = 5.0;
  InputFlags f1_in;
  fig1->add_option("--alpha", f1_alpha, "coherent amplitude")->capture_default_str();
  f1_in.attach(fig1);
  fig1->add_option("--g0", f1.g0, "single-photon Rabi frequency")->capture_default_str();
  auto* f1_tmax = fig1->add_option("--t-max", f1.t_max, "trace end time (default 2*pi/(alpha*g0))");
  fig1->add_option("--points", f1.n_points, "number of time samples")->capture_default_str();
  fig1->add_option("--out", f1.out, "output CSV path")->capture_default_str();
  attach_policy(fig1, f1.policy);
  fig1->callback([&] {
    f1.alpha = ComplexScalar(f1_alpha, 0.0);
    std::tie(f1.x, f1.y) = f1_in.resolve(f1.alpha);
    if (!f1_tmax->count()) f1.t_max = 2.0 * M_PI / (std::abs(f1.alpha) * f1.g0);
    const auto res = catport::cmd_fig1(f1);
    std::printf("wrote %s (checksum %s)\n", res.csv_path.c_str(),
                catport::checksum_hex(res.checksum).c_str());
  });

  // fig2 — fixed-time and peak fidelity versus alpha
  auto* fig2 = app.add_subcommand("fig2", "fixed-time and peak fidelity versus alpha (CSV)");
  catport::Fig2Params f2;
  fig2->add_option("--alpha-min", f2.alpha_min, "grid start")->capture_default_str();
  fig2->add_option("--alpha-max", f2.alpha_max, "grid end")->capture_default_str();
  fig2->add_option("--points", f2.n_points, "grid size")->capture_default_str();
  fig2->add_option("--g0", f2.g0, "single-photon Rabi frequency")->capture_default_str();
  fig2->add_option("--out", f2.out, "output CSV path")->capture_default_str();
  fig2->callback([&] {
    const auto res = catport::cmd_fig2(f2);
    std::printf("wrote %s (checksum %s)\n", res.csv_path.c_str(),
                catport::checksum_hex(res.checksum).c_str());
  });

  // fig3 — Monte-Carlo averaged fidelity versus alpha
  auto* fig3 = app.add_subcommand("fig3", "averaged fidelity versus alpha, 5/6 baseline (CSV)");
  catport::Fig3Params f3;
  fig3->add_option("--alpha-min", f3.alpha_lo, "grid start")->capture_default_str();
  fig3->add_option("--alpha-max", f3.alpha_hi, "grid end")->capture_default_str();
  fig3->add_option("--points", f3.n_alpha, "grid size")->capture_default_str();
  fig3->add_option("--samples", f3.n_samples, "Monte-Carlo samples per grid point")
      ->capture_default_str();
  fig3->add_option("--seed", f3.seed, "RNG seed")->capture_default_str();
  fig3->add_option("--g0", f3.g0, "single-photon Rabi frequency")->capture_default_str();
  fig3->add_option("--out", f3.out, "output CSV path")->capture_default_str();
  fig3->callback([&] {
    const auto res = catport::cmd_fig3(f3);
    std::printf("wrote %s (checksum %s)\n", res.csv_path.c_str(),
                catport::checksum_hex(res.checksum).c_str());
  });

  // pfail — dark-dark failure probability versus alpha
  auto* pfail = app.add_subcommand("pfail", "failure probability versus alpha (CSV)");
  catport::PfailParams pf;
  pfail->add_option("--alpha-min", pf.alpha_lo, "grid start")->capture_default_str();
  pfail->add_option("--alpha-max", pf.alpha_hi, "grid end")->capture_default_str();
  pfail->add_option("--points", pf.n_points, "grid size")->capture_default_str();
  pfail->add_option("--theta", pf.theta, "input point: polar angle")->capture_default_str();
  pfail->add_option("--phi", pf.phi, "input point: azimuthal angle")->capture_default_str();
  pfail->add_option("--out", pf.out, "output CSV path")->capture_default_str();
  attach_policy(pfail, pf.policy);
  pfail->callback([&] {
    const auto res = catport::cmd_pfail(pf);
    std::printf("wrote %s (checksum %s)\n", res.csv_path.c_str(),
                catport::checksum_hex(res.checksum).c_str());
  });

  // teleport — all five outcomes of one scenario
  auto* tele = app.add_subcommand("teleport", "single teleportation scenario, all outcomes");
  catport::TeleportParams tp;
  double tp_alpha = 2.0;
  InputFlags tp_in;
  catport::Schedule tp_schedule = catport::Schedule::Blind;
  tele->add_option("--alpha", tp_alpha, "coherent amplitude")->capture_default_str();
  tp_in.attach(tele);
  tele->add_option("--g0", tp.g0, "single-photon Rabi frequency")->capture_default_str();
  tele->add_option("--schedule", tp_schedule, "correction-time schedule (blind|oracle)")
      ->transform(CLI::CheckedTransformer(kSchedules, CLI::ignore_case));
  tele->add_option("--seed", tp.seed, "recorded in the manifest")->capture_default_str();
  tele->add_option("--out", tp.out, "output CSV path")->capture_default_str();
  attach_policy(tele, tp.policy);
  tele->callback([&] {
    tp.alpha = ComplexScalar(tp_alpha, 0.0);
    std::tie(tp.x, tp.y) = tp_in.resolve(tp.alpha);
    tp.schedule = tp_schedule;
    const auto out = catport::cmd_teleport(tp);
    std::fputs(catport::render_teleport_text(out.reports).c_str(), stdout);
    std::printf("wrote %s (checksum %s)\n", out.files.csv_path.c_str(),
                catport::checksum_hex(out.files.checksum).c_str());
  });

  // feasibility — cavity-QED parameter check
  auto* feas = app.add_subcommand("feasibility", "cavity-QED feasibility report");
  std::string preset;
  double nbar = 1.0, threshold = 10.0;
  double cg0 = 0.0, cgamma = 0.0, ckappa = 0.0;
  std::string feas_out;
  auto* opre = feas->add_option("--preset", preset, "named parameter set: rydberg or cesium");
  auto* og = feas->add_option("--g0", cg0, "single-photon Rabi frequency, rad/s");
  auto* oga = feas->add_option("--gamma", cgamma, "atomic decay rate, rad/s");
  auto* oka = feas->add_option("--kappa", ckappa, "cavity decay rate, rad/s");
  feas->add_option("--nbar", nbar, "mean photon number")->capture_default_str();
  feas->add_option("--threshold", threshold, "factor that counts as 'much greater'")
      ->capture_default_str();
  feas->add_option("--out", feas_out, "also write the report to this file");
  opre->excludes(og);
  opre->excludes(oga);
  opre->excludes(oka);
  feas->callback([&] {
    catport::CavityParams cp;
    if (!preset.empty()) {
      cp = catport::preset_params(preset, nbar, threshold);
    } else {
      if (!og->count() || !oga->count() || !oka->count())
        throw catport::Error("feasibility: give --preset or all of --g0, --gamma, --kappa");
      cp = catport::CavityParams{cg0, cgamma, ckappa, nbar, threshold};
    }
    const auto report = catport::evaluate_feasibility(cp);
    const std::string text = catport::render_feasibility_text(report);
    std::fputs(text.c_str(), stdout);
    if (!feas_out.empty()) catport::write_file_atomic(feas_out, text);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const catport::Error& e) {
    std::fprintf(stderr, "error: %s\nrun '%s <command> --help' for usage\n", e.what(),
                 argv[0] ? argv[0] : "catport");
    return 1;
  }
  return 0;
}
