#pragma once

#include <Eigen/Dense>
#include <string>

#include "zac/control_field.hpp"
#include "zac/quantum_state.hpp"
#include "zac/system_model.hpp"
#include "zac/time_grid.hpp"

namespace zac {

enum class Direction { forward, backward };

/// States at every node of a grid, column i = coefficients at node t_i.
/// Columns are stored in chronological order for both propagation
/// directions.
struct Trajectory {
  TimeGrid grid;
  Eigen::MatrixXcd states;
  std::string basis_id;

  int n_nodes() const { return static_cast<int>(states.cols()); }
  QuantumState state_at(int i) const {
    return QuantumState(states.col(i), basis_id);
  }
};

/// Strang-split propagator for H(t) = H0 + E(t) H1 on a fixed grid step:
///
///   U(dt, e) = exp(-i H0 dt/2) exp(-i e H1 dt) exp(-i H0 dt/2)
///
/// with the sign of dt flipped for backward steps, so a backward step is
/// the exact adjoint of the forward step at the same field value. The H0
/// half-step factors are precomputed once; the H1 factor uses the cached
/// eigendecomposition of H1 with field-dependent phases. When H0 is
/// diagonal in the model basis the basis rotations for the half steps are
/// skipped, and a step with e == 0 skips the H1 factor entirely so free
/// evolution stays exactly diagonal.
class Propagator {
 public:
  Propagator(const SystemModel& model, const TimeGrid& grid);

  const TimeGrid& grid() const { return grid_; }
  const SystemModel& model() const { return model_; }

  QuantumState step(const QuantumState& state, double e_mid, Direction dir) const;
  void step_inplace(Eigen::VectorXcd& coeffs, double e_mid, Direction dir) const;

  /// Propagate across the whole grid and store the state at every node.
  /// Forward: trajectory column 0 is the initial state. Backward: the last
  /// column is the initial state. Unit norm is enforced at every node.
  Trajectory propagate(const QuantumState& initial, const ControlField& field,
                       Direction dir) const;

 private:
  void check_state(const QuantumState& state) const;

  SystemModel model_;
  TimeGrid grid_;
  bool h0_diagonal_ = false;
  // phases of exp(-i H0 dt/2); conjugate pair used for backward steps
  Eigen::VectorXcd half0_fwd_, half0_bwd_;
  Eigen::MatrixXcd v0_, v0_adj_;   // H0 eigenbasis, unused when diagonal
  Eigen::VectorXd h1_evals_;
  Eigen::MatrixXcd v1_, v1_adj_;
};

}  // namespace zac
