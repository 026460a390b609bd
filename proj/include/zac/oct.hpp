#pragma once

#include <vector>

#include "zac/analysis.hpp"
#include "zac/propagator.hpp"

namespace zac {

/// sin^2(pi t / tf) switching envelope sampled at the grid nodes, with the
/// endpoint samples set to exactly zero.
Eigen::VectorXd sin2_envelope(const TimeGrid& grid);

struct OctConfig {
  double lambda = 100.0;  // energy-penalty weight, a.u.
  double mu = 0.0;        // area-penalty weight, a.u.
  Eigen::VectorXd envelope;
  int max_iterations = 200;
  double target_fidelity = 0.99;
  ControlField guess;

  OctConfig(double lambda_, double mu_, Eigen::VectorXd envelope_,
            int max_iterations_, double target_fidelity_, ControlField guess_)
      : lambda(lambda_),
        mu(mu_),
        envelope(std::move(envelope_)),
        max_iterations(max_iterations_),
        target_fidelity(target_fidelity_),
        guess(std::move(guess_)) {}

  static OctConfig defaults(ControlField guess_field) {
    Eigen::VectorXd env = sin2_envelope(guess_field.grid());
    return OctConfig(100.0, 0.0, std::move(env), 200, 0.99, std::move(guess_field));
  }
};

/// One step of the monotonic loop. Every stored cost refers to the field of
/// this iterate with the previous iterate's field as reference:
///   cost = overlap_real - area_term - energy_term
/// with area_term = mu * area^2 and
/// energy_term = lambda * \int (E_k - E_{k-1})^2 / S dt.
struct OctIterate {
  int k = 0;
  ControlField field;
  double fidelity = 0.0;
  double overlap_real = 0.0;
  double cost = 0.0;
  double area = 0.0;
  double energy_term = 0.0;
  double area_term = 0.0;
};

struct OctRun {
  std::vector<OctIterate> iterates;
  ControlField final_field;
  bool monotonic_ok = true;       // cost nondecreasing within tolerance
  double worst_cost_drop = 0.0;   // most negative relative cost decrease seen
  int iterations_to_target = -1;  // first iterate k with fidelity >= target

  bool reached_target() const { return iterations_to_target >= 0; }
};

/// \int (E - E_ref)^2 / S dt with the integrand defined as 0 at nodes where
/// S = 0 and E = E_ref; throws if E != E_ref at such a node.
double penalty_integral(const ControlField& field, const ControlField& field_ref,
                        const Eigen::VectorXd& envelope);

/// Full cost functional for a given field: the final-state overlap with the
/// target minus the area and energy penalties.
double oct_cost(const SystemModel& model, const QuantumState& psi0,
                const QuantumState& target, const ControlField& field,
                const ControlField& field_ref, double lambda, double mu,
                const Eigen::VectorXd& envelope);

struct FieldUpdate {
  ControlField field;        // E_{k+1}
  QuantumState final_state;  // psi_{k+1}(tf) from the concurrent sweep
};

/// Monotonic field update evaluated node by node while the new state is
/// propagated forward (single-sweep implicit scheme: the step to t_i uses
/// E_{k+1}(t_{i-1}) as the midpoint estimate, then the overlap is taken):
///
///   E_{k+1} = E_k + S Im<chi_k|H1|psi_{k+1}> / (2 lambda)
///                 - (mu / lambda) S A_k
///
/// area_k is frozen at the start of the iteration.
FieldUpdate update_field(const Propagator& prop, const QuantumState& psi0,
                         const Trajectory& chi, const ControlField& field_k,
                         double area_k, double lambda, double mu,
                         const Eigen::VectorXd& envelope);

/// Monotonic loop: backward-propagate chi_k from the target under E_k, then
/// sweep forward applying update_field; stop at target_fidelity or
/// max_iterations. A cost decrease beyond 1e-9 relative tolerance is
/// flagged in the run record, not thrown.
OctRun optimize(const SystemModel& model, const QuantumState& psi0,
                const QuantumState& target, const OctConfig& config);

}  // namespace zac
