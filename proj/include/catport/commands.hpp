#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "catport/csv.hpp"
#include "catport/feasibility.hpp"
#include "catport/jaynes_cummings.hpp"
#include "catport/manifest.hpp"
#include "catport/montecarlo.hpp"
#include "catport/protocol.hpp"
#include "catport/states.hpp"

namespace catport {

// Where a command put its data and what the data hashed to.
struct CommandResult {
  std::string csv_path;
  std::string manifest_path;
  std::uint64_t checksum = 0;
};

namespace detail {

inline void put(std::map<std::string, std::string>& m, const std::string& key, double v) {
  m[key] = format_number(v);
}

inline void put(std::map<std::string, std::string>& m, const std::string& key, ComplexScalar v) {
  m[key + "_re"] = format_number(v.real());
  m[key + "_im"] = format_number(v.imag());
}

inline CommandResult finish_command(const std::string& command, const std::string& out,
                                    std::uint64_t seed,
                                    std::map<std::string, std::string> parameters,
                                    const std::vector<std::string>& header,
                                    const std::vector<std::vector<std::string>>& rows) {
  CommandResult res;
  res.csv_path = out;
  res.manifest_path = out + ".manifest.json";
  res.checksum = write_csv(out, header, rows);
  RunManifest m;
  m.command = command;
  m.parameters = std::move(parameters);
  m.seed = seed;
  m.timestamp = utc_timestamp_now();
  m.output_file = out;
  m.checksum = res.checksum;
  write_manifest(res.manifest_path, m);
  return res;
}

} // namespace detail

// --- time trace of the correction fidelity and the atomic excitation ---------

struct Fig1Params {
  ComplexScalar alpha{5.0, 0.0};
  ComplexScalar x{1.0, 0.0};
  ComplexScalar y{1.0, 0.0};
  double g0 = 1.0;
  double t_max = 0.0; // must be set > 0 by the caller
  int n_points = 200;
  std::string out = "fig1.csv";
  TruncationPolicy policy{1e-14, 4096};
};

// Sweeps t over [0, t_max]: closed-form fidelity, simulated fidelity and the
// excitation probability of the correcting atom. Columns
// t, F_closed, F_numeric, P_e.
inline CommandResult cmd_fig1(const Fig1Params& p) {
  if (!(p.t_max > 0.0)) throw Error("fig1: t_max must be positive");
  if (p.n_points < 2) throw Error("fig1: need at least 2 points");
  if (!(p.g0 > 0.0)) throw Error("fig1: g0 must be positive");

  const int n_max = choose_nmax({p.alpha}, p.policy) + 2;
  FockVector init = to_fock(input_cat(p.alpha, p.x, -p.y).state, 0, n_max);
  const double inv = 1.0 / std::sqrt(init.norm_sq());
  for (auto& a : init.amps) a *= inv;
  FockVector target = to_fock(input_cat(p.alpha, p.x, p.y).state, 0, n_max);
  const double tinv = 1.0 / std::sqrt(target.norm_sq());
  for (auto& a : target.amps) a *= tinv;

  std::vector<std::vector<std::string>> rows;
  rows.reserve(std::size_t(p.n_points));
  for (int i = 0; i < p.n_points; ++i) {
    const double t = p.t_max * double(i) / double(p.n_points - 1);
    const AtomFieldState evolved = jc_evolve(init, JCParams{p.g0, t});
    rows.push_back({format_number(t),
                    format_number(fidelity_closed_form(p.alpha, p.x, p.y, JCParams{p.g0, t})),
                    format_number(field_fidelity(evolved, target)),
                    format_number(excitation_probability(evolved))});
  }

  std::map<std::string, std::string> params;
  detail::put(params, "alpha", p.alpha);
  detail::put(params, "x", p.x);
  detail::put(params, "y", p.y);
  detail::put(params, "g0", p.g0);
  detail::put(params, "t_max", p.t_max);
  params["n_points"] = std::to_string(p.n_points);
  detail::put(params, "epsilon", p.policy.epsilon);
  params["nmax_cap"] = std::to_string(p.policy.n_max_cap);
  return detail::finish_command("fig1", p.out, 0, std::move(params),
                                {"t", "F_closed", "F_numeric", "P_e"}, rows);
}

// --- fixed-time and peak correction fidelity versus alpha --------------------

struct Fig2Params {
  double alpha_min = 0.5;
  double alpha_max = 5.0;
  int n_points = 10;
  double g0 = 1.0;
  std::string out = "fig2.csv";
};

// For each alpha: the even- and odd-cat correction fidelities at the nominal
// time pi/(alpha g0) and their searched peaks. Columns
// alpha, F_even_fixed_t, F_odd_fixed_t, F_even_max, F_odd_max.
inline CommandResult cmd_fig2(const Fig2Params& p) {
  if (!(p.alpha_min > 0.0 && p.alpha_max > p.alpha_min))
    throw Error("fig2: need 0 < alpha_min < alpha_max");
  if (p.n_points < 2) throw Error("fig2: need at least 2 points");
  if (!(p.g0 > 0.0)) throw Error("fig2: g0 must be positive");

  std::vector<std::vector<std::string>> rows;
  rows.reserve(std::size_t(p.n_points));
  for (int i = 0; i < p.n_points; ++i) {
    const double a = p.alpha_min + (p.alpha_max - p.alpha_min) * double(i) / double(p.n_points - 1);
    const ComplexScalar alpha(a, 0.0);
    const double t0 = M_PI / (a * p.g0);
    const auto [xe, ye] = cat_from_bloch(alpha, M_PI, 0.0); // even cat
    const auto [xo, yo] = cat_from_bloch(alpha, 0.0, 0.0);  // odd cat
    rows.push_back({format_number(a),
                    format_number(fidelity_closed_form(alpha, xe, ye, JCParams{p.g0, t0})),
                    format_number(fidelity_closed_form(alpha, xo, yo, JCParams{p.g0, t0})),
                    format_number(find_fmax(alpha, xe, ye, p.g0).f_max),
                    format_number(find_fmax(alpha, xo, yo, p.g0).f_max)});
  }

  std::map<std::string, std::string> params;
  detail::put(params, "alpha_min", p.alpha_min);
  detail::put(params, "alpha_max", p.alpha_max);
  params["n_points"] = std::to_string(p.n_points);
  detail::put(params, "g0", p.g0);
  return detail::finish_command(
      "fig2", p.out, 0, std::move(params),
      {"alpha", "F_even_fixed_t", "F_odd_fixed_t", "F_even_max", "F_odd_max"}, rows);
}

// --- averaged fidelity versus alpha, against the 5/6 baseline ----------------

struct Fig3Params {
  double alpha_lo = 0.5;
  double alpha_hi = 3.0;
  int n_alpha = 11;
  int n_samples = 1000;
  std::uint64_t seed = 1;
  double g0 = 1.0;
  std::string out = "fig3.csv";
};

// Monte-Carlo averaged fidelity per alpha under both schedules, sharing one
// seed (common random numbers). std_err is the Blind run's standard error —
// both runs use the same sample count, and Blind is the operational curve.
// Columns alpha, f_ave_max, f_ave_fixed_t, std_err, baseline.
inline CommandResult cmd_fig3(const Fig3Params& p) {
  if (!(p.alpha_lo > 0.0 && p.alpha_hi > p.alpha_lo))
    throw Error("fig3: need 0 < alpha_lo < alpha_hi");
  if (p.n_alpha < 2) throw Error("fig3: need at least 2 grid points");
  if (p.n_samples < 100) throw Error("fig3: need at least 100 samples");
  if (!(p.g0 > 0.0)) throw Error("fig3: g0 must be positive");

  std::vector<std::vector<std::string>> rows;
  rows.reserve(std::size_t(p.n_alpha));
  const std::string baseline = format_number(5.0 / 6.0);
  for (int i = 0; i < p.n_alpha; ++i) {
    const double a = p.alpha_lo + (p.alpha_hi - p.alpha_lo) * double(i) / double(p.n_alpha - 1);
    McConfig cfg;
    cfg.n_samples = p.n_samples;
    cfg.seed = p.seed;
    cfg.alpha = ComplexScalar(a, 0.0);
    cfg.g0 = p.g0;
    cfg.schedule = Schedule::Oracle;
    const McResult peak = average_fidelity(cfg);
    cfg.schedule = Schedule::Blind;
    const McResult fixed = average_fidelity(cfg);
    rows.push_back({format_number(a), format_number(peak.f_ave), format_number(fixed.f_ave),
                    format_number(fixed.std_err), baseline});
  }

  std::map<std::string, std::string> params;
  detail::put(params, "alpha_lo", p.alpha_lo);
  detail::put(params, "alpha_hi", p.alpha_hi);
  params["n_alpha"] = std::to_string(p.n_alpha);
  params["n_samples"] = std::to_string(p.n_samples);
  params["seed"] = std::to_string(p.seed);
  detail::put(params, "g0", p.g0);
  return detail::finish_command("fig3", p.out, p.seed, std::move(params),
                                {"alpha", "f_ave_max", "f_ave_fixed_t", "std_err", "baseline"},
                                rows);
}

// --- dark-dark failure probability versus alpha ------------------------------

struct PfailParams {
  double alpha_lo = 0.5;
  double alpha_hi = 3.0;
  int n_points = 11;
  double theta = M_PI; // even cat by default
  double phi = 0.0;
  std::string out = "pfail.csv";
  TruncationPolicy policy{};
};

// Closed-form versus enumerated probability that both counters stay dark.
// Columns alpha, p_fail_closed, p_fail_simulated.
inline CommandResult cmd_pfail(const PfailParams& p) {
  if (!(p.alpha_lo > 0.0 && p.alpha_hi > p.alpha_lo))
    throw Error("pfail: need 0 < alpha_lo < alpha_hi");
  if (p.n_points < 2) throw Error("pfail: need at least 2 points");

  std::vector<std::vector<std::string>> rows;
  rows.reserve(std::size_t(p.n_points));
  for (int i = 0; i < p.n_points; ++i) {
    const double a = p.alpha_lo + (p.alpha_hi - p.alpha_lo) * double(i) / double(p.n_points - 1);
    const ComplexScalar alpha(a, 0.0);
    const auto [x, y] = cat_from_bloch(alpha, p.theta, p.phi);
    const SimulatedProbabilities sim = outcome_probabilities_simulated(alpha, x, y, p.policy);
    rows.push_back({format_number(a), format_number(failure_probability(alpha, x, y)),
                    format_number(sim.p[4])});
  }

  std::map<std::string, std::string> params;
  detail::put(params, "alpha_lo", p.alpha_lo);
  detail::put(params, "alpha_hi", p.alpha_hi);
  params["n_points"] = std::to_string(p.n_points);
  detail::put(params, "theta", p.theta);
  detail::put(params, "phi", p.phi);
  detail::put(params, "epsilon", p.policy.epsilon);
  params["nmax_cap"] = std::to_string(p.policy.n_max_cap);
  return detail::finish_command("pfail", p.out, 0, std::move(params),
                                {"alpha", "p_fail_closed", "p_fail_simulated"}, rows);
}

// --- all five outcomes of a single teleportation scenario --------------------

struct TeleportParams {
  ComplexScalar alpha{2.0, 0.0};
  ComplexScalar x{1.0, 0.0};
  ComplexScalar y{1.0, 0.0};
  double g0 = 1.0;
  Schedule schedule = Schedule::Blind;
  std::uint64_t seed = 0; // recorded for provenance; the run is deterministic
  std::string out = "teleport.csv";
  TruncationPolicy policy{1e-14, 4096};
};

struct TeleportOutput {
  std::vector<OutcomeReport> reports;
  CommandResult files;
};

// One row per outcome class. Columns outcome, probability, correction,
// fidelity, t_used.
inline TeleportOutput cmd_teleport(const TeleportParams& p) {
  if (!(p.g0 > 0.0)) throw Error("teleport: g0 must be positive");
  TeleportOutput out;
  out.reports = teleport_all_outcomes(p.alpha, p.x, p.y, p.g0, p.schedule, p.policy);

  std::vector<std::vector<std::string>> rows;
  rows.reserve(out.reports.size());
  for (const auto& r : out.reports)
    rows.push_back({to_string(r.outcome.tag), format_number(r.probability),
                    to_string(r.correction), format_number(r.fidelity),
                    format_number(r.t_used)});

  std::map<std::string, std::string> params;
  detail::put(params, "alpha", p.alpha);
  detail::put(params, "x", p.x);
  detail::put(params, "y", p.y);
  detail::put(params, "g0", p.g0);
  params["schedule"] = to_string(p.schedule);
  params["seed"] = std::to_string(p.seed);
  detail::put(params, "epsilon", p.policy.epsilon);
  params["nmax_cap"] = std::to_string(p.policy.n_max_cap);
  out.files = detail::finish_command(
      "teleport", p.out, p.seed, std::move(params),
      {"outcome", "probability", "correction", "fidelity", "t_used"}, rows);
  return out;
}

// Human-readable table of the same report.
inline std::string render_teleport_text(const std::vector<OutcomeReport>& reports) {
  std::string s = "outcome    probability     correction     fidelity        t_used\n";
  char line[160];
  for (const auto& r : reports) {
    std::snprintf(line, sizeof(line), "%-10s %-15.10g %-14s %-15.10g %-15.10g\n",
                  to_string(r.outcome.tag), r.probability, to_string(r.correction), r.fidelity,
                  r.t_used);
    s += line;
  }
  return s;
}

// --- cavity-QED feasibility check ---------------------------------------------

// Text report for a feasibility evaluation: raw ratios, verdicts at the
// configured threshold, and the threshold-free nbar window. Rates are echoed
// both as angular and as /2pi values.
inline std::string render_feasibility_text(const FeasibilityReport& r) {
  constexpr double two_pi = 2.0 * M_PI;
  char buf[1024];
  std::snprintf(
      buf, sizeof(buf),
      "g0    = %.6g rad/s  (g0/2pi    = %.6g Hz)\n"
      "gamma = %.6g rad/s  (gamma/2pi = %.6g Hz)\n"
      "kappa = %.6g rad/s  (kappa/2pi = %.6g Hz)\n"
      "nbar  = %.6g\n"
      "sqrt(nbar) g0 / gamma        = %.6g  [%s at threshold %.3g]\n"
      "sqrt(nbar) g0 / (nbar kappa) = %.6g  [%s at threshold %.3g]\n"
      "nbar window (threshold-free): %.6g << nbar << %.6g\n"
      "verdict: %s\n",
      r.params.g0, r.params.g0 / two_pi, r.params.gamma, r.params.gamma / two_pi, r.params.kappa,
      r.params.kappa / two_pi, r.params.nbar, r.ratio_atom, r.pass_atom ? "pass" : "fail",
      r.params.ratio_threshold, r.ratio_cavity, r.pass_cavity ? "pass" : "fail",
      r.params.ratio_threshold, r.nbar_lower, r.nbar_upper, r.pass ? "FEASIBLE" : "NOT FEASIBLE");
  return buf;
}

} // namespace catport
