#pragma once

#include <stdexcept>
#include <string>

namespace nkerr {

// Base of every domain failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two unperturbed energies coincide (or nearly so); non-degenerate
// perturbation theory does not apply.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// A series entry was requested before the lower orders it depends on.
class MissingOrderError : public Error {
 public:
  using Error::Error;
};

// A closed-form denominator vanishes. The message names the denominator.
class PoleError : public Error {
 public:
  using Error::Error;
};

// The pure cross-Kerr form was requested away from Raman resonance.
class NotResonantError : public Error {
 public:
  using Error::Error;
};

// The operation is defined only for the lossless (Hermitian) regime.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class TrackingError : public Error {
 public:
  using Error::Error;
};

// Finite-difference step rejected: the Richardson levels disagree.
class StepError : public Error {
 public:
  using Error::Error;
};

// A resonant manifold cannot be formed from the requested seed state.
class ManifoldError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace nkerr
