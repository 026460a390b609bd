#include "zac/propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace zac {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

bool is_diagonal(const Eigen::MatrixXcd& m) {
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != std::complex<double>(0.0, 0.0)) return false;
  return true;
}

void check_unitary_columns(const Eigen::MatrixXcd& v, const char* what) {
  for (int j = 0; j < v.cols(); ++j) {
    if (std::abs(v.col(j).norm() - 1.0) > 1e-12)
      throw std::runtime_error(std::string("Propagator: non-unitary factor in ") + what);
  }
}

}  // namespace

Propagator::Propagator(const SystemModel& model, const TimeGrid& grid)
    : model_(model), grid_(grid) {
  const int n = model_.dim();
  const double dt = grid_.dt();

  h0_diagonal_ = is_diagonal(model_.h0().matrix());
  half0_fwd_.resize(n);
  half0_bwd_.resize(n);
  if (h0_diagonal_) {
    for (int j = 0; j < n; ++j) {
      const double e = model_.h0().matrix()(j, j).real();
      half0_fwd_[j] = std::exp(-kImag * e * (0.5 * dt));
      half0_bwd_[j] = std::conj(half0_fwd_[j]);
    }
  } else {
    v0_ = model_.h0().eigenvectors();
    v0_adj_ = v0_.adjoint();
    check_unitary_columns(v0_, "H0 eigenbasis");
    const Eigen::VectorXd& w = model_.h0().eigenvalues();
    for (int j = 0; j < n; ++j) {
      half0_fwd_[j] = std::exp(-kImag * w[j] * (0.5 * dt));
      half0_bwd_[j] = std::conj(half0_fwd_[j]);
    }
  }

  h1_evals_ = model_.h1().eigenvalues();
  v1_ = model_.h1().eigenvectors();
  v1_adj_ = v1_.adjoint();
  check_unitary_columns(v1_, "H1 eigenbasis");
}

void Propagator::step_inplace(Eigen::VectorXcd& c, double e_mid, Direction dir) const {
  const double sdt = (dir == Direction::forward) ? grid_.dt() : -grid_.dt();
  const Eigen::VectorXcd& half0 =
      (dir == Direction::forward) ? half0_fwd_ : half0_bwd_;

  auto half_step_h0 = [&]() {
    if (h0_diagonal_) {
      c.array() *= half0.array();
    } else {
      Eigen::VectorXcd w = v0_adj_ * c;
      w.array() *= half0.array();
      c.noalias() = v0_ * w;
    }
  };

  half_step_h0();
  if (e_mid != 0.0) {
    Eigen::VectorXcd w = v1_adj_ * c;
    for (int j = 0; j < w.size(); ++j)
      w[j] *= std::exp(-kImag * (e_mid * h1_evals_[j] * sdt));
    c.noalias() = v1_ * w;
  }
  half_step_h0();
}

void Propagator::check_state(const QuantumState& state) const {
  if (state.dim() != model_.dim())
    throw std::invalid_argument("Propagator: state dimension does not match model");
  if (!state.basis_id.empty() && state.basis_id != model_.name())
    throw std::invalid_argument("Propagator: state basis '" + state.basis_id +
                                "' does not match model '" + model_.name() + "'");
}

QuantumState Propagator::step(const QuantumState& state, double e_mid,
                              Direction dir) const {
  check_state(state);
  Eigen::VectorXcd c = state.coeffs;
  step_inplace(c, e_mid, dir);
  return QuantumState(std::move(c), model_.name());
}

Trajectory Propagator::propagate(const QuantumState& initial,
                                 const ControlField& field, Direction dir) const {
  check_state(initial);
  if (field.grid() != grid_)
    throw std::invalid_argument("Propagator: field grid does not match propagator grid");
  if (std::abs(initial.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("Propagator: initial state is not normalized");

  const int n_nodes = grid_.n_nodes();
  Trajectory traj{grid_, Eigen::MatrixXcd(model_.dim(), n_nodes), model_.name()};

  auto check_norm = [](const Eigen::VectorXcd& c) {
    if (std::abs(c.norm() - 1.0) > 1e-10)
      throw std::runtime_error("Propagator: norm conservation violated (dt too large?)");
  };

  Eigen::VectorXcd c = initial.coeffs;
  if (dir == Direction::forward) {
    traj.states.col(0) = c;
    for (int i = 1; i < n_nodes; ++i) {
      step_inplace(c, field.midpoint(i - 1), Direction::forward);
      check_norm(c);
      traj.states.col(i) = c;
    }
  } else {
    traj.states.col(n_nodes - 1) = c;
    for (int i = n_nodes - 1; i >= 1; --i) {
      step_inplace(c, field.midpoint(i - 1), Direction::backward);
      check_norm(c);
      traj.states.col(i - 1) = c;
    }
  }
  return traj;
}

}  // namespace zac
