#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "catport/jaynes_cummings.hpp"
#include "catport/optimize.hpp"
#include "catport/protocol.hpp"
#include "catport/rng.hpp"

namespace catport {

// One Monte-Carlo run over the input-state sphere. Identical configs give
// bit-identical results: sampling is keyed by (seed, sample index) alone and
// the reduction is sequential compensated summation.
struct McConfig {
  int n_samples = 10000;
  std::uint64_t seed = 1;
  Schedule schedule = Schedule::Blind;
  ComplexScalar alpha{1.0, 0.0};
  double g0 = 1.0;
  // Diagnostic switch: score the correctable outcome classes at fidelity 1 and
  // the failure class at probability 0, which collapses the estimator to the
  // exact constant 1. Off for every physical result.
  bool assume_perfect_correction = false;
};

struct BlochSample {
  double theta = 0.0;
  double phi = 0.0;
};

// Uniform point on the sphere: cos(theta) uniform on [-1, 1], phi uniform on
// [0, 2*pi) — the sin(theta) dtheta dphi measure.
inline BlochSample sample_bloch(SplitMix64& rng) {
  const double c = 2.0 * rng.next_double() - 1.0;
  const double phi = 2.0 * M_PI * rng.next_double();
  return {std::acos(std::clamp(c, -1.0, 1.0)), phi};
}

struct McResult {
  double f_ave = 0.0;
  double std_err = 0.0;
};

namespace detail {

inline void kahan_add(double& sum, double& carry, double value) {
  const double y = value - carry;
  const double t = sum + y;
  carry = (t - sum) - y;
  sum = t;
}

} // namespace detail

// Mean transfer fidelity over uniformly random inputs: per sample,
//   v = P1 + P2 + (P3 + P4) * F34 + P5 * F5,
// with the closed-form outcome probabilities, perfect parity-class fidelities,
// F34 the atom-correction fidelity at the scheduled time (nominal time for
// Blind, searched peak for Oracle), and the closed-form failure-class score.
// Returns the sample mean and its standard error (sample sd / sqrt(n)).
inline McResult average_fidelity(const McConfig& cfg) {
  if (cfg.n_samples < 1) throw Error("average_fidelity: n_samples must be >= 1");
  if (!(cfg.g0 > 0.0)) throw Error("average_fidelity: g0 must be positive");
  const double t0 = M_PI / (std::abs(cfg.alpha) * cfg.g0);
  double sum = 0.0, carry = 0.0;
  double sum_sq = 0.0, carry_sq = 0.0;
  for (int i = 0; i < cfg.n_samples; ++i) {
    SplitMix64 rng = stream_for(cfg.seed, std::uint64_t(i));
    const BlochSample s = sample_bloch(rng);
    double v;
    if (cfg.assume_perfect_correction) {
      v = 0.25 + 0.25 + 0.25 + 0.25;
    } else {
      const auto [x, y] = cat_from_bloch(cfg.alpha, s.theta, s.phi);
      const std::array<double, 5> p = outcome_probabilities_closed(cfg.alpha, x, y);
      const double f34 =
          cfg.schedule == Schedule::Oracle
              ? find_fmax(cfg.alpha, x, y, cfg.g0, kOracleWindowFraction * t0).f_max
              : fidelity_closed_form(cfg.alpha, x, y, JCParams{cfg.g0, t0});
      v = p[0] + p[1] + (p[2] + p[3]) * f34 + p[4] * f5_fidelity(cfg.alpha, x, y);
    }
    detail::kahan_add(sum, carry, v);
    detail::kahan_add(sum_sq, carry_sq, v * v);
  }
  const double n = double(cfg.n_samples);
  const double mean = sum / n;
  McResult res{mean, 0.0};
  if (cfg.n_samples > 1) {
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    res.std_err = std::sqrt(var / n);
  }
  return res;
}

// Fixed high-sample setup for the crossover root-find. The seed is shared by
// every evaluation (common random numbers), so the curve being bisected is a
// smooth deterministic function of alpha.
struct CrossoverConfig {
  double alpha_lo = 0.5;
  double alpha_hi = 3.0;
  int n_samples = 100000;
  std::uint64_t seed = 424242;
  Schedule schedule = Schedule::Oracle;
};

// Smallest alpha in [alpha_lo, alpha_hi] where the averaged fidelity curve
// crosses `target`, by bisection to within tol. Throws NoBracket when the
// curve sits on one side of the target across the whole interval.
inline double crossover_search(double g0, double target = 5.0 / 6.0, double tol = 0.01,
                               const CrossoverConfig& cc = {}) {
  if (!(tol > 0.0)) throw Error("crossover_search: tol must be positive");
  McConfig cfg;
  cfg.n_samples = cc.n_samples;
  cfg.seed = cc.seed;
  cfg.schedule = cc.schedule;
  cfg.g0 = g0;
  const auto gap = [&](double a) {
    McConfig c = cfg;
    c.alpha = ComplexScalar(a, 0.0);
    return average_fidelity(c).f_ave - target;
  };
  return bisect_crossing(gap, cc.alpha_lo, cc.alpha_hi, tol);
}

} // namespace catport
