#pragma once

#include <vector>

#include "zac/propagator.hpp"

namespace zac {

/// Setup for the Lyapunov control law
///
///   E(t) = epsilon ( <psi| [O, H1]/i |psi> - 2 mu A(t) )
///
/// for an observable O commuting with H0 (validated on construction).
class LyapunovSpec {
 public:
  LyapunovSpec(SystemModel model, HermitianOp observable, double epsilon,
               double mu, TimeGrid grid);

  const SystemModel& model() const { return model_; }
  const HermitianOp& observable() const { return observable_; }
  double epsilon() const { return epsilon_; }
  double mu() const { return mu_; }
  const TimeGrid& grid() const { return grid_; }

  /// Expectation of [O, H1]/i, checked to be real to 1e-12.
  double commutator_expectation(const Eigen::VectorXcd& coeffs) const;

  double observable_expectation(const Eigen::VectorXcd& coeffs) const;

 private:
  SystemModel model_;
  HermitianOp observable_;
  double epsilon_;
  double mu_;
  TimeGrid grid_;
  Eigen::MatrixXcd commutator_over_i_;  // [O, H1] / i, hermitian
};

/// Time-resolved record of a closed-loop local-control run. The state
/// trajectory is kept so the field law can be replayed against the stored
/// values.
struct LocalRun {
  TimeGrid grid;
  Eigen::VectorXd field;
  Eigen::VectorXd j_lc;          // <O> - mu A^2
  Eigen::VectorXd exp_o;
  Eigen::VectorXd running_area;  // trapezoidal, consistent with the field samples
  Eigen::MatrixXcd states;
  bool monotonic_ok = true;   // J_lc nondecreasing node to node within 1e-9
  double worst_drop = 0.0;    // most negative node-to-node J_lc change
};

double field_law(const QuantumState& psi, double running_area_value,
                 const LyapunovSpec& spec);

/// Integrate state and field self-consistently: at each node the field is
/// computed from the current state and running area (the trapezoidal area
/// update is solved in closed form so the stored samples satisfy the field
/// law exactly), then one propagation step is taken with that value.
LocalRun run_local(const LyapunovSpec& spec, const QuantumState& psi0);

/// N = 8 stand-in system for local-control demonstrations: a diagonal H0
/// split into two channel groups, O the projector onto the target group
/// (commutes with H0 by construction), and a dense real-symmetric coupling
/// H1 with zero diagonal drawn from a fixed documented seed. The suggested
/// initial state is the ground state with a small target-channel admixture;
/// a state with exactly zero target population is a critical point of the
/// field law and the control would never switch on.
struct SurrogateSetup {
  SystemModel model;
  HermitianOp observable;
  QuantumState initial_state;
  std::vector<int> target_indices;
};

SurrogateSetup build_surrogate(double seed_admixture = 0.1);

}  // namespace zac
