#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "catport/errors.hpp"

namespace catport {

using ComplexScalar = std::complex<double>;

// Photon-number truncation policy for coherent-to-Fock conversion: keep enough
// amplitudes that the discarded Poisson tail of every contributing coherent
// component stays below epsilon, but never more than n_max_cap + 1 of them.
struct TruncationPolicy {
  double epsilon = 1e-12;
  int n_max_cap = 4096;
};

// Overlap <beta|alpha> of two coherent states,
//   exp(-|alpha|^2/2 - |beta|^2/2 + conj(beta)*alpha).
// Note the argument order: the first argument is the ket.
inline ComplexScalar coherent_overlap(ComplexScalar alpha, ComplexScalar beta) {
  const double a2 = std::norm(alpha);
  const double b2 = std::norm(beta);
  return std::exp(ComplexScalar(-0.5 * (a2 + b2), 0.0) + std::conj(beta) * alpha);
}

// Photon-number amplitude <n|alpha> = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
// Magnitude is assembled in log space so large n cannot overflow; the phase
// n*arg(alpha) is tracked separately.
inline ComplexScalar fock_amplitude(ComplexScalar alpha, int n) {
  const double a2 = std::norm(alpha);
  if (a2 == 0.0) return n == 0 ? ComplexScalar(1.0, 0.0) : ComplexScalar(0.0, 0.0);
  const double mag =
      std::exp(-0.5 * a2 + 0.5 * n * std::log(a2) - 0.5 * std::lgamma(double(n) + 1.0));
  const double ph = double(n) * std::arg(alpha);
  return ComplexScalar(mag * std::cos(ph), mag * std::sin(ph));
}

// Truncated single-mode state in the photon-number basis; amps[n] multiplies |n>.
struct FockVector {
  int n_max = 0;
  std::vector<ComplexScalar> amps; // length n_max + 1

  double norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
  }
};

// <a|b> for two Fock vectors; missing amplitudes count as zero.
inline ComplexScalar fock_inner(const FockVector& a, const FockVector& b) {
  const std::size_t n = std::min(a.amps.size(), b.amps.size());
  ComplexScalar s(0.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) s += std::conj(a.amps[k]) * b.amps[k];
  return s;
}

// Weighted sum of products of coherent states, the exact working representation:
//   sum_k coeff_k |amps_k[0]> (x) ... (x) |amps_k[n_modes-1]>.
// Closed under beam splitters, parity and vacuum/photon-number projection, so
// no truncation enters until a Fock vector is requested explicitly.
struct CoherentTerm {
  ComplexScalar coeff;
  std::vector<ComplexScalar> amps; // one amplitude per mode
};

class CoherentSuperposition {
public:
  explicit CoherentSuperposition(int n_modes) : n_modes_(n_modes) {}

  int n_modes() const { return n_modes_; }
  const std::vector<CoherentTerm>& terms() const { return terms_; }

  void add_term(ComplexScalar coeff, std::vector<ComplexScalar> amps) {
    if (int(amps.size()) != n_modes_)
      throw BadMode("term amplitude count does not match mode count");
    terms_.push_back({coeff, std::move(amps)});
  }

  // <this|other>, via the Gram matrix of coherent overlaps.
  ComplexScalar overlap(const CoherentSuperposition& other) const {
    if (other.n_modes_ != n_modes_)
      throw BadMode("overlap between states with different mode counts");
    ComplexScalar s(0.0, 0.0);
    for (const auto& ti : terms_) {
      for (const auto& tj : other.terms_) {
        ComplexScalar g(1.0, 0.0);
        for (int m = 0; m < n_modes_; ++m)
          g *= coherent_overlap(tj.amps[m], ti.amps[m]); // <ti_m | tj_m>
        s += std::conj(ti.coeff) * tj.coeff * g;
      }
    }
    return s;
  }

  double norm_sq() const { return overlap(*this).real(); }

  CoherentSuperposition normalized() const {
    const double ns = norm_sq();
    if (!(ns > 1e-30)) throw ZeroState("cannot normalize a zero-norm superposition");
    return scaled(1.0 / std::sqrt(ns));
  }

  CoherentSuperposition scaled(ComplexScalar factor) const {
    CoherentSuperposition out = *this;
    for (auto& t : out.terms_) t.coeff *= factor;
    return out;
  }

  CoherentSuperposition tensor(const CoherentSuperposition& other) const {
    CoherentSuperposition out(n_modes_ + other.n_modes_);
    for (const auto& ti : terms_) {
      for (const auto& tj : other.terms_) {
        std::vector<ComplexScalar> amps = ti.amps;
        amps.insert(amps.end(), tj.amps.begin(), tj.amps.end());
        out.terms_.push_back({ti.coeff * tj.coeff, std::move(amps)});
      }
    }
    return out;
  }

  // Merge terms whose component amplitudes all agree within merge_tol, then
  // drop terms with negligible coefficients and sort deterministically.
  CoherentSuperposition canonicalized(double merge_tol = 1e-12,
                                      double drop_tol = 1e-15) const {
    std::vector<CoherentTerm> merged;
    for (const auto& t : terms_) {
      bool absorbed = false;
      for (auto& m : merged) {
        bool close = true;
        for (int k = 0; k < n_modes_ && close; ++k)
          close = std::abs(m.amps[k] - t.amps[k]) < merge_tol;
        if (close) {
          m.coeff += t.coeff;
          absorbed = true;
          break;
        }
      }
      if (!absorbed) merged.push_back(t);
    }
    std::erase_if(merged, [&](const CoherentTerm& t) { return std::abs(t.coeff) < drop_tol; });
    std::sort(merged.begin(), merged.end(), [](const CoherentTerm& a, const CoherentTerm& b) {
      for (std::size_t k = 0; k < a.amps.size(); ++k) {
        if (a.amps[k].real() != b.amps[k].real()) return a.amps[k].real() < b.amps[k].real();
        if (a.amps[k].imag() != b.amps[k].imag()) return a.amps[k].imag() < b.amps[k].imag();
      }
      return false;
    });
    CoherentSuperposition out(n_modes_);
    out.terms_ = std::move(merged);
    return out;
  }

private:
  int n_modes_;
  std::vector<CoherentTerm> terms_;
};

namespace detail {

// Exact Poisson(lambda) upper tail P(X > n), summed from the top so that tiny
// tails never suffer 1 - CDF cancellation. Terms are generated from a log-space
// seed and a multiplicative recurrence.
inline double poisson_upper_tail(double lambda, int n) {
  if (lambda <= 0.0) return 0.0;
  double k = double(n) + 1.0;
  double p = std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
  double tail = 0.0;
  while (p > 0.0) {
    tail += p;
    k += 1.0;
    p *= lambda / k;
    if (p < tail * 1e-18 && k > lambda) break;
  }
  // Remaining geometric-bounded remainder (ratio < lambda/k < 1 here).
  if (p > 0.0 && k > lambda) tail += p / (1.0 - lambda / k);
  return tail;
}

} // namespace detail

// Smallest cutoff n such that every listed coherent amplitude has Poisson
// photon-number tail beyond n below policy.epsilon. Throws CapExceeded instead
// of silently returning an unusable cutoff.
inline int choose_nmax(const std::vector<ComplexScalar>& alphas, const TruncationPolicy& policy) {
  if (alphas.empty()) throw Error("choose_nmax: empty amplitude list");
  if (!(policy.epsilon > 0.0 && policy.epsilon < 1.0))
    throw Error("choose_nmax: epsilon must lie in (0, 1)");
  if (policy.n_max_cap < 1) throw Error("choose_nmax: n_max_cap must be >= 1");
  int best = 0;
  for (const auto& a : alphas) {
    const double lambda = std::norm(a);
    if (!std::isfinite(lambda)) throw Error("choose_nmax: non-finite amplitude");
    int n = std::max(0, int(std::floor(lambda)));
    while (detail::poisson_upper_tail(lambda, n) >= policy.epsilon) {
      ++n;
      if (n > policy.n_max_cap)
        throw CapExceeded("choose_nmax: cutoff above cap for |alpha|^2 = " +
                          std::to_string(lambda));
    }
    // Walk back in case the start point overshot the minimal cutoff.
    while (n > 0 && detail::poisson_upper_tail(lambda, n - 1) < policy.epsilon) --n;
    best = std::max(best, n);
  }
  return best;
}

// Expand a single-mode superposition in the photon-number basis up to n_max.
inline FockVector to_fock(const CoherentSuperposition& state, int mode, int n_max) {
  if (state.n_modes() != 1)
    throw MultiModeState("to_fock requires a single-mode state");
  if (mode != 0) throw BadMode("to_fock: mode index out of range");
  FockVector out;
  out.n_max = n_max;
  out.amps.assign(std::size_t(n_max) + 1, ComplexScalar(0.0, 0.0));
  for (const auto& t : state.terms())
    for (int n = 0; n <= n_max; ++n) out.amps[std::size_t(n)] += t.coeff * fock_amplitude(t.amps[0], n);
  return out;
}

// Photon-number parity (-1)^{a^dag a} on one mode: exactly alpha -> -alpha on
// every term; norms and overlaps are untouched.
inline CoherentSuperposition parity_apply(const CoherentSuperposition& state, int mode) {
  if (mode < 0 || mode >= state.n_modes())
    throw BadMode("parity_apply: mode index out of range");
  CoherentSuperposition out(state.n_modes());
  for (const auto& t : state.terms()) {
    auto amps = t.amps;
    amps[std::size_t(mode)] = -amps[std::size_t(mode)];
    out.add_term(t.coeff, std::move(amps));
  }
  return out;
}

// Fock-basis form of the same operation: flip the sign of odd amplitudes.
inline FockVector parity_apply(const FockVector& field) {
  FockVector out = field;
  for (std::size_t n = 1; n < out.amps.size(); n += 2) out.amps[n] = -out.amps[n];
  return out;
}

struct InputCat {
  CoherentSuperposition state; // x|alpha> + y|-alpha>, rescaled to unit norm
  double raw_norm_sq;          // |x|^2 + |y|^2 + 2 e^{-2|alpha|^2} Re(conj(x) y)
};

// The superposed coherent state x|alpha> + y|-alpha| as a unit-norm state,
// together with the pre-rescale norm.
inline InputCat input_cat(ComplexScalar alpha, ComplexScalar x, ComplexScalar y) {
  const double u = std::exp(-2.0 * std::norm(alpha)); // <alpha|-alpha>, always real
  const double raw =
      std::norm(x) + std::norm(y) + 2.0 * u * (std::conj(x) * y).real();
  if (!(raw > 1e-30)) throw ZeroState("input_cat: zero-norm superposition");
  const double inv = 1.0 / std::sqrt(raw);
  CoherentSuperposition state(1);
  state.add_term(x * inv, {alpha});
  state.add_term(y * inv, {-alpha});
  return {std::move(state), raw};
}

// Map a point of the input-state sphere to cat coefficients. The poles are the
// odd (theta = 0) and even (theta = pi) cats; superpositions in between use the
// orthonormal even/odd basis with relative phase phi, so the resulting (x, y)
// always satisfy the unit-norm identity of input_cat.
inline std::pair<ComplexScalar, ComplexScalar> cat_from_bloch(ComplexScalar alpha,
                                                              double theta, double phi) {
  if (std::abs(alpha) < 1e-6)
    throw DegenerateAlpha("cat_from_bloch: odd-cat normalization singular near alpha = 0");
  const double u = std::exp(-2.0 * std::norm(alpha));
  const double ne = 1.0 / std::sqrt(2.0 * (1.0 + u));
  const double no = 1.0 / std::sqrt(2.0 * (1.0 - u));
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  const ComplexScalar e = std::exp(ComplexScalar(0.0, phi));
  return {s * ne + c * e * no, s * ne - c * e * no};
}

} // namespace catport
