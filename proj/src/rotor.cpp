#include "zac/rotor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace zac {

namespace {

// <j,0| cos(theta) |j',0> is tridiagonal with off-diagonal elements
// (j+1) / sqrt((2j+1)(2j+3)); the diagonal vanishes (parity selection).
Eigen::MatrixXd cos_theta_matrix(int dim) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j + 1 < dim; ++j) {
    const double v = (j + 1.0) / std::sqrt((2.0 * j + 1.0) * (2.0 * j + 3.0));
    c(j, j + 1) = v;
    c(j + 1, j) = v;
  }
  return c;
}

void validate(const RotorParams& p) {
  if (p.b <= 0.0) throw std::invalid_argument("RotorParams: B must be positive");
  if (p.j_max < p.j_opt || p.j_opt < 1)
    throw std::invalid_argument("RotorParams: need j_max >= j_opt >= 1");
  if (p.fwhm <= 0.0) throw std::invalid_argument("RotorParams: fwhm must be positive");
}

}  // namespace

double rotational_period(const RotorParams& params) {
  return std::numbers::pi / params.b;
}

RotorModel build_rotor(const RotorParams& params) {
  validate(params);
  const int dim = params.j_max + 1;

  Eigen::MatrixXd h0 = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) h0(j, j) = params.b * j * (j + 1.0);

  const Eigen::MatrixXd c = cos_theta_matrix(dim);

  std::vector<std::string> labels;
  labels.reserve(dim);
  for (int j = 0; j < dim; ++j) labels.push_back("|" + std::to_string(j) + ",0>");

  SystemModel system(HermitianOp::from_real(h0), HermitianOp::from_real(-params.d * c),
                     labels, "co-rotor-jmax" + std::to_string(params.j_max));
  return RotorModel{params, std::move(system), HermitianOp::from_real(c)};
}

QuantumState ground_state(const RotorModel& model) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(model.system.dim());
  c[0] = 1.0;
  return QuantumState(std::move(c), model.system.name());
}

QuantumState target_state(const RotorParams& params) {
  validate(params);
  const int dim = params.j_max + 1;
  const int rdim = params.j_opt + 1;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cos_theta_matrix(rdim));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("target_state: eigendecomposition failed");
  Eigen::VectorXd v = solver.eigenvectors().col(rdim - 1);  // largest eigenvalue
  if (v[0] < 0.0) v = -v;

  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim);
  full.head(rdim) = v.cast<std::complex<double>>();
  return QuantumState(std::move(full), "co-rotor-jmax" + std::to_string(params.j_max));
}

ControlField guess_pulse(const RotorParams& params, const TimeGrid& grid) {
  validate(params);
  const double t_rot = rotational_period(params);
  if (grid.tf() < t_rot * (1.0 - 1e-12))
    throw std::invalid_argument("guess_pulse: grid does not span [0, T_rot]");

  const double center = 0.25 * t_rot;
  const double gauss_coeff = 4.0 * std::numbers::ln2 / (params.fwhm * params.fwhm);

  Eigen::VectorXd e(grid.n_nodes());
  for (int i = 0; i < grid.n_nodes(); ++i) {
    const double dtc = grid.node(i) - center;
    e[i] = params.e_peak * std::exp(-gauss_coeff * dtc * dtc);
  }
  return ControlField(grid, std::move(e));
}

double expectation_cos_theta(const QuantumState& state, const RotorModel& model) {
  if (state.dim() != model.system.dim())
    throw std::invalid_argument("expectation_cos_theta: dimension mismatch");
  const std::complex<double> v =
      state.coeffs.dot(model.cos_theta.matrix() * state.coeffs);
  return v.real();
}

}  // namespace zac
