#include "zac/oct.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zac {

Eigen::VectorXd sin2_envelope(const TimeGrid& grid) {
  const int n = grid.n_steps();
  Eigen::VectorXd s(grid.n_nodes());
  s[0] = 0.0;
  s[n] = 0.0;
  for (int i = 1; i < n; ++i) {
    const double v = std::sin(std::numbers::pi * i / n);
    s[i] = v * v;
  }
  return s;
}

namespace {

void check_envelope(const Eigen::VectorXd& env, const TimeGrid& grid) {
  if (env.size() != grid.n_nodes())
    throw std::invalid_argument("oct: envelope length does not match grid");
  if (env[0] != 0.0 || env[env.size() - 1] != 0.0)
    throw std::invalid_argument("oct: envelope must vanish at both endpoints");
  for (int i = 0; i < env.size(); ++i)
    if (!(env[i] >= 0.0 && env[i] <= 1.0))
      throw std::invalid_argument("oct: envelope samples must lie in [0, 1]");
}

// Forward propagation that steps node i-1 -> i with the node-(i-1) field
// sample as midpoint estimate, the same convention the update sweep uses.
// Keeps the recorded iterate-0 state on the same discretization as all
// later iterates so the stored costs are comparable.
Eigen::VectorXcd forward_left_node(const Propagator& prop, const QuantumState& psi0,
                                   const ControlField& field) {
  Eigen::VectorXcd c = psi0.coeffs;
  for (int i = 1; i < field.n_nodes(); ++i)
    prop.step_inplace(c, field[i - 1], Direction::forward);
  return c;
}

}  // namespace

double penalty_integral(const ControlField& field, const ControlField& field_ref,
                        const Eigen::VectorXd& envelope) {
  if (field.grid() != field_ref.grid())
    throw std::invalid_argument("penalty_integral: fields on different grids");
  check_envelope(envelope, field.grid());

  const int n_nodes = field.n_nodes();
  const double dt = field.grid().dt();
  double acc = 0.0;
  for (int i = 0; i < n_nodes; ++i) {
    const double de = field[i] - field_ref[i];
    double term = 0.0;
    if (envelope[i] == 0.0) {
      if (de != 0.0)
        throw std::invalid_argument(
            "penalty_integral: field differs from reference where the envelope vanishes");
    } else {
      term = de * de / envelope[i];
    }
    const double w = (i == 0 || i == n_nodes - 1) ? 0.5 : 1.0;
    acc += w * dt * term;
  }
  return acc;
}

double oct_cost(const SystemModel& model, const QuantumState& psi0,
                const QuantumState& target, const ControlField& field,
                const ControlField& field_ref, double lambda, double mu,
                const Eigen::VectorXd& envelope) {
  Propagator prop(model, field.grid());
  const Trajectory traj = prop.propagate(psi0, field, Direction::forward);
  const std::complex<double> overlap =
      target.coeffs.dot(traj.states.col(traj.n_nodes() - 1));

  const double a = area(field);
  return overlap.real() - mu * a * a -
         lambda * penalty_integral(field, field_ref, envelope);
}

FieldUpdate update_field(const Propagator& prop, const QuantumState& psi0,
                         const Trajectory& chi, const ControlField& field_k,
                         double area_k, double lambda, double mu,
                         const Eigen::VectorXd& envelope) {
  const TimeGrid& grid = prop.grid();
  if (field_k.grid() != grid || chi.grid != grid)
    throw std::invalid_argument("update_field: grid mismatch");
  check_envelope(envelope, grid);
  if (!(lambda > 0.0)) throw std::invalid_argument("update_field: lambda must be positive");

  const Eigen::MatrixXcd& h1 = prop.model().h1().matrix();
  const int n_nodes = grid.n_nodes();

  Eigen::VectorXd e_new(n_nodes);
  e_new[0] = field_k[0];  // envelope vanishes at t = 0

  Eigen::VectorXcd c = psi0.coeffs;
  Eigen::VectorXcd h1c(c.size());
  for (int i = 1; i < n_nodes; ++i) {
    prop.step_inplace(c, e_new[i - 1], Direction::forward);
    h1c.noalias() = h1 * c;
    const double overlap_im = chi.states.col(i).dot(h1c).imag();
    e_new[i] = field_k[i] + envelope[i] * overlap_im / (2.0 * lambda) -
               (mu / lambda) * envelope[i] * area_k;
  }

  return FieldUpdate{ControlField(grid, std::move(e_new)),
                     QuantumState(std::move(c), prop.model().name())};
}

OctRun optimize(const SystemModel& model, const QuantumState& psi0,
                const QuantumState& target, const OctConfig& config) {
  const TimeGrid& grid = config.guess.grid();
  check_envelope(config.envelope, grid);
  if (std::abs(psi0.norm() - 1.0) > 1e-10 || std::abs(target.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("optimize: initial and target states must be normalized");

  const Propagator prop(model, grid);
  constexpr double kMonotonicTol = 1e-9;

  OctRun run{{}, config.guess};

  auto record = [&](int k, ControlField field, const Eigen::VectorXcd& final_state,
                    double energy_integral) {
    OctIterate it{k, std::move(field)};
    const std::complex<double> overlap = target.coeffs.dot(final_state);
    it.overlap_real = overlap.real();
    it.fidelity = std::norm(overlap);
    it.area = area(it.field);
    it.area_term = config.mu * it.area * it.area;
    it.energy_term = config.lambda * energy_integral;
    it.cost = it.overlap_real - it.area_term - it.energy_term;
    run.iterates.push_back(std::move(it));
  };

  record(0, config.guess, forward_left_node(prop, psi0, config.guess), 0.0);

  while (run.iterates.back().fidelity < config.target_fidelity &&
         static_cast<int>(run.iterates.size()) <= config.max_iterations) {
    const OctIterate& prev = run.iterates.back();
    const Trajectory chi = prop.propagate(target, prev.field, Direction::backward);
    FieldUpdate up = update_field(prop, psi0, chi, prev.field, prev.area,
                                  config.lambda, config.mu, config.envelope);

    const double energy_integral =
        penalty_integral(up.field, prev.field, config.envelope);
    record(prev.k + 1, std::move(up.field), up.final_state.coeffs, energy_integral);

    const double prev_cost = run.iterates[run.iterates.size() - 2].cost;
    const double drop = run.iterates.back().cost - prev_cost;
    const double rel = drop / std::max(std::abs(prev_cost), 1e-300);
    if (rel < run.worst_cost_drop) run.worst_cost_drop = rel;
    if (drop < -kMonotonicTol * std::abs(prev_cost)) run.monotonic_ok = false;
  }

  for (const OctIterate& it : run.iterates) {
    if (it.fidelity >= config.target_fidelity) {
      run.iterations_to_target = it.k;
      break;
    }
  }
  run.final_field = run.iterates.back().field;
  return run;
}

}  // namespace zac
