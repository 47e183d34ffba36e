#pragma once

#include <stdexcept>
#include <string>

namespace catport {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Requested photon-number cutoff exceeds the configured cap (amplitude too large
// for Fock-path operations under the current truncation policy).
class CapExceeded : public Error {
public:
  using Error::Error;
};

// A single-mode operation was handed a multimode state.
class MultiModeState : public Error {
public:
  using Error::Error;
};

// Mode index out of range, or two mode arguments collide.
class BadMode : public Error {
public:
  using Error::Error;
};

// A state with (numerically) zero norm where a normalized state is required.
class ZeroState : public Error {
public:
  using Error::Error;
};

// |alpha| too small: odd-cat normalization is singular at alpha = 0.
class DegenerateAlpha : public Error {
public:
  using Error::Error;
};

// A series accumulator stopped being finite (overflow / bad cutoff).
class SeriesDiverged : public Error {
public:
  using Error::Error;
};

// Measurement outcome for which no correction is defined.
class UnknownOutcome : public Error {
public:
  using Error::Error;
};

// Root-bracketing failure: the endpoints do not straddle the target.
class NoBracket : public Error {
public:
  using Error::Error;
};

// Named parameter preset that does not exist.
class UnknownPreset : public Error {
public:
  using Error::Error;
};

} // namespace catport
