#pragma once

#include "zac/control_field.hpp"
#include "zac/quantum_state.hpp"
#include "zac/system_model.hpp"
#include "zac/time_grid.hpp"
#include "zac/units.hpp"

namespace zac {

/// Rigid-rotor parameters for a linear polar molecule driven by a linearly
/// polarized field, restricted to the m = 0 sector. Defaults are the CO
/// molecule in atomic units.
struct RotorParams {
  double b = 8.79919e-6;   // rotational constant, a.u.
  double d = 0.044;        // permanent dipole moment, a.u.
  int j_max = 15;          // basis truncation, dimension j_max+1
  int j_opt = 4;           // target-subspace truncation
  double e_peak = 2.0e-4;  // guess-pulse peak amplitude, a.u.
  double fwhm = 288.0 * units::fs_to_au;  // guess-pulse FWHM, a.u.
};

struct RotorModel {
  RotorParams params;
  SystemModel system;      // h0 = B J^2 (diagonal), h1 = -d cos(theta)
  HermitianOp cos_theta;   // tridiagonal orientation operator
};

/// Revival period of the B j(j+1) spectrum: pi / B. All phases realign
/// exactly after this time because j(j+1) is always even.
double rotational_period(const RotorParams& params);

RotorModel build_rotor(const RotorParams& params);

QuantumState ground_state(const RotorModel& model);

/// Unit eigenvector of cos(theta) restricted to span{|0,0>..|j_opt,0>} with
/// the largest eigenvalue, embedded in the full basis with the j = 0
/// coefficient real positive.
QuantumState target_state(const RotorParams& params);

/// Gaussian pulse, FWHM params.fwhm, centered at T_rot/4, peak params.e_peak.
/// The grid must span [0, T_rot].
ControlField guess_pulse(const RotorParams& params, const TimeGrid& grid);

double expectation_cos_theta(const QuantumState& state, const RotorModel& model);

}  // namespace zac
