#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "catport/states.hpp"

namespace catport {

// Five-way classification of the detector pair (n_e, n_f), plus the
// "both saw photons" case that the protocol state cannot produce.
enum class OutcomeTag { ZeroOdd, OddZero, ZeroEven, EvenZero, BothZero, Impossible };

struct BellOutcome {
  OutcomeTag tag;
  int n_e = 0;
  int n_f = 0;

  // Conventional 1..5 outcome index; 0 for Impossible.
  int index() const {
    switch (tag) {
      case OutcomeTag::ZeroOdd: return 1;
      case OutcomeTag::OddZero: return 2;
      case OutcomeTag::ZeroEven: return 3;
      case OutcomeTag::EvenZero: return 4;
      case OutcomeTag::BothZero: return 5;
      default: return 0;
    }
  }
};

inline BellOutcome classify_outcome(int n_e, int n_f) {
  if (n_e < 0 || n_f < 0) throw Error("classify_outcome: negative photon count");
  OutcomeTag tag;
  if (n_e == 0 && n_f == 0) tag = OutcomeTag::BothZero;
  else if (n_e > 0 && n_f > 0) tag = OutcomeTag::Impossible;
  else if (n_e == 0) tag = (n_f % 2 == 1) ? OutcomeTag::ZeroOdd : OutcomeTag::ZeroEven;
  else tag = (n_e % 2 == 1) ? OutcomeTag::OddZero : OutcomeTag::EvenZero;
  return {tag, n_e, n_f};
}

// Two-mode entangled coherent source
//   N (|alpha>|-alpha> - |-alpha>|alpha>),  N = 1/sqrt(2(1 - e^{-4|alpha|^2})).
// Mode 0 feeds the measurement-side beam splitter, mode 1 is the receiver's.
inline CoherentSuperposition entangled_source(ComplexScalar alpha) {
  if (std::abs(alpha) < 1e-6)
    throw DegenerateAlpha("entangled_source: degenerate at alpha = 0");
  const double n = 1.0 / std::sqrt(2.0 * (1.0 - std::exp(-4.0 * std::norm(alpha))));
  CoherentSuperposition out(2);
  out.add_term(ComplexScalar(n, 0.0), {alpha, -alpha});
  out.add_term(ComplexScalar(-n, 0.0), {-alpha, alpha});
  return out;
}

// 50/50 beam splitter on two modes of a superposition. Per term the amplitude
// pair maps
//   (a, b) -> ((a + b)/sqrt2, (b - a)/sqrt2),
// a symmetric real convention; coefficients are untouched, so all pairwise term
// overlaps (hence norms) are preserved exactly. Applying it twice on the same
// mode pair gives (a, b) -> (b, -a): a mode swap plus a sign flip on mode_b.
inline CoherentSuperposition beam_splitter(const CoherentSuperposition& state, int mode_a,
                                           int mode_b) {
  const int nm = state.n_modes();
  if (mode_a < 0 || mode_a >= nm || mode_b < 0 || mode_b >= nm)
    throw BadMode("beam_splitter: mode index out of range");
  if (mode_a == mode_b) throw BadMode("beam_splitter: modes must be distinct");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CoherentSuperposition out(nm);
  for (const auto& t : state.terms()) {
    auto amps = t.amps;
    const ComplexScalar a = amps[std::size_t(mode_a)];
    const ComplexScalar b = amps[std::size_t(mode_b)];
    amps[std::size_t(mode_a)] = (a + b) * inv_sqrt2;
    amps[std::size_t(mode_b)] = (b - a) * inv_sqrt2;
    out.add_term(t.coeff, std::move(amps));
  }
  return out;
}

// Result of projecting one mode onto a photon-number eigenstate. `conditional`
// is empty when the outcome has (numerically) zero probability — the flagged
// zero-state case.
struct ProjectionResult {
  double prob = 0.0;
  std::optional<CoherentSuperposition> conditional; // remaining modes, unit norm
};

// Project `mode` onto |n><n|. Exact in the coherent representation: each term's
// coefficient picks up the scalar <n|amp_mode> and the mode disappears.
inline ProjectionResult project_photon_number(const CoherentSuperposition& state, int mode,
                                              int n) {
  if (mode < 0 || mode >= state.n_modes())
    throw BadMode("project_photon_number: mode index out of range");
  if (n < 0) throw Error("project_photon_number: negative photon number");
  CoherentSuperposition reduced(state.n_modes() - 1);
  for (const auto& t : state.terms()) {
    const ComplexScalar amp = fock_amplitude(t.amps[std::size_t(mode)], n);
    std::vector<ComplexScalar> amps;
    amps.reserve(t.amps.size() - 1);
    for (int m = 0; m < state.n_modes(); ++m)
      if (m != mode) amps.push_back(t.amps[std::size_t(m)]);
    reduced.add_term(t.coeff * amp, std::move(amps));
  }
  ProjectionResult res;
  if (reduced.n_modes() == 0) {
    // Fully projected: the "norm" is the squared amplitude of the remaining scalar.
    ComplexScalar s(0.0, 0.0);
    for (const auto& t : reduced.terms()) s += t.coeff;
    res.prob = std::norm(s);
    return res;
  }
  res.prob = reduced.norm_sq();
  if (res.prob > 1e-30) res.conditional = reduced.scaled(1.0 / std::sqrt(res.prob));
  return res;
}

} // namespace catport
