#pragma once

#include <optional>
#include <stdexcept>

#include "zac/control_field.hpp"
#include "zac/quantum_state.hpp"

namespace zac {

struct UndefinedMeasureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Measures {
  double area = 0.0;
  double abs_area = 0.0;
  double fluence = 0.0;
  double a_norm = 0.0;
  std::optional<double> b_norm;
};

/// |<psi_final | target>|^2, phase-insensitive, in [0, 1].
double fidelity(const QuantumState& psi_final, const QuantumState& target);

/// Trapezoidal integral of |E| over the grid.
double abs_area(const ControlField& field);

/// Trapezoidal integral of E^2 over the grid.
double fluence(const ControlField& field);

/// Signed-to-absolute area ratio; throws UndefinedMeasureError for an
/// identically zero field.
double a_norm(const ControlField& field);

/// Ratio of signed areas of a constrained field to a reference
/// (unconstrained) field; throws UndefinedMeasureError when the reference
/// area vanishes.
double b_norm(const ControlField& field_with, const ControlField& field_without);

Measures compute_measures(const ControlField& field,
                          const ControlField* reference_without = nullptr);

/// Spectral high-pass filter. The n_steps leading samples are treated as
/// one period of length tf (the closing node is the periodic image of the
/// first); DFT bins with |frequency| <= cutoff_frequency, DC included, are
/// zeroed and the signal is transformed back. cutoff_frequency is an
/// ordinary (cyclic) frequency in 1/a.u. With the periodic-record
/// convention, removing the DC bin makes the trapezoidal area of the
/// output vanish identically.
ControlField highpass_filter(const ControlField& field, double cutoff_frequency);

}  // namespace zac
