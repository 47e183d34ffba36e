#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "catport/errors.hpp"

namespace catport {

// Cavity-QED operating point. All rates are angular (rad/s); presets convert
// from the conventional nu = omega/2pi or lifetime figures on construction.
struct CavityParams {
  double g0 = 0.0;    // single-photon Rabi frequency
  double gamma = 0.0; // atomic spontaneous decay rate
  double kappa = 0.0; // cavity field decay rate
  double nbar = 0.0;  // mean photon number |alpha|^2
  // "Much greater than" operationalized as a ratio of at least this factor.
  double ratio_threshold = 10.0;
};

struct FeasibilityReport {
  CavityParams params;
  // sqrt(nbar) g0 / gamma: collective coupling against atomic decay.
  double ratio_atom = 0.0;
  // sqrt(nbar) g0 / (nbar kappa): coupling against the cat's decoherence rate,
  // which scales with the photon number itself.
  double ratio_cavity = 0.0;
  bool pass_atom = false;
  bool pass_cavity = false;
  bool pass = false;
  // The raw nbar window the two inequalities imply, threshold-free:
  // (gamma/g0)^2 << nbar << (g0/kappa)^2.
  double nbar_lower = 0.0;
  double nbar_upper = 0.0;
};

inline FeasibilityReport evaluate_feasibility(const CavityParams& p) {
  if (!(p.g0 > 0.0 && p.gamma > 0.0 && p.kappa > 0.0))
    throw Error("evaluate_feasibility: rates must be positive");
  if (!(p.nbar >= 0.0)) throw Error("evaluate_feasibility: nbar must be non-negative");
  if (!(p.ratio_threshold > 0.0))
    throw Error("evaluate_feasibility: ratio threshold must be positive");
  FeasibilityReport r;
  r.params = p;
  const double root = std::sqrt(p.nbar);
  r.ratio_atom = root * p.g0 / p.gamma;
  r.ratio_cavity = p.nbar > 0.0 ? root * p.g0 / (p.nbar * p.kappa)
                                : std::numeric_limits<double>::infinity();
  r.pass_atom = r.ratio_atom >= p.ratio_threshold;
  r.pass_cavity = r.ratio_cavity >= p.ratio_threshold;
  r.pass = r.pass_atom && r.pass_cavity;
  r.nbar_lower = (p.gamma / p.g0) * (p.gamma / p.g0);
  r.nbar_upper = (p.g0 / p.kappa) * (p.g0 / p.kappa);
  return r;
}

// Named operating points from the cavity-QED literature.
//   rydberg — microwave cavity with circular Rydberg atoms:
//             g0/2pi = 47 kHz, atomic lifetime 30 ms, cavity lifetime 1 ms.
//   cesium  — optical cavity with a cesium atom:
//             g0/2pi = 32 MHz, gamma/2pi = 2.6 MHz, kappa/2pi = 4 MHz.
inline CavityParams preset_params(const std::string& name, double nbar,
                                  double ratio_threshold = 10.0) {
  constexpr double two_pi = 2.0 * M_PI;
  if (name == "rydberg") return {two_pi * 47e3, 1.0 / 30e-3, 1.0 / 1e-3, nbar, ratio_threshold};
  if (name == "cesium")
    return {two_pi * 32e6, two_pi * 2.6e6, two_pi * 4e6, nbar, ratio_threshold};
  throw UnknownPreset("unknown cavity preset: " + name);
}

} // namespace catport
