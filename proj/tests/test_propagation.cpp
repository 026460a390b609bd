#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "zac/propagator.hpp"
#include "zac/rotor.hpp"

using namespace zac;
using std::complex;

namespace {

SystemModel two_level(double e0, double e1, double coupling) {
  Eigen::MatrixXd h0 = Eigen::MatrixXd::Zero(2, 2);
  h0(0, 0) = e0;
  h0(1, 1) = e1;
  Eigen::MatrixXd h1 = Eigen::MatrixXd::Zero(2, 2);
  h1(0, 1) = coupling;
  h1(1, 0) = coupling;
  return SystemModel(HermitianOp::from_real(h0), HermitianOp::from_real(h1),
                     {"g", "e"}, "two-level");
}

// Exact propagation under a constant field by diagonalizing H0 + e H1 once.
Eigen::VectorXcd exact_constant_field(const SystemModel& model, double e_const,
                                      double total_time, const Eigen::VectorXcd& c0) {
  const Eigen::MatrixXcd h =
      model.h0().matrix() + e_const * model.h1().matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  REQUIRE(solver.info() == Eigen::Success);
  Eigen::VectorXcd w = solver.eigenvectors().adjoint() * c0;
  for (int j = 0; j < w.size(); ++j)
    w[j] *= std::exp(complex<double>(0.0, -solver.eigenvalues()[j] * total_time));
  return solver.eigenvectors() * w;
}

}  // namespace

TEST_CASE("free step multiplies eigenstate coefficients by the exact phase") {
  SystemModel model = two_level(0.0, 1.25, 0.3);
  TimeGrid grid(2.0, 10);
  Propagator prop(model, grid);

  Eigen::VectorXcd c(2);
  c << complex<double>(0.6, 0.0), complex<double>(0.0, 0.8);
  QuantumState state(c, "two-level");
  QuantumState stepped = prop.step(state, 0.0, Direction::forward);

  const complex<double> phase0 = std::exp(complex<double>(0.0, -0.0 * grid.dt()));
  const complex<double> phase1 = std::exp(complex<double>(0.0, -1.25 * grid.dt()));
  CHECK(std::abs(stepped.coeffs[0] - c[0] * phase0) <= 1e-15);
  CHECK(std::abs(stepped.coeffs[1] - c[1] * phase1) <= 1e-15);
}

TEST_CASE("forward then backward step is the identity") {
  SystemModel model = two_level(0.2, 1.1, 0.5);
  TimeGrid grid(3.0, 7);
  Propagator prop(model, grid);

  Eigen::VectorXcd c(2);
  c << complex<double>(0.36, 0.48), complex<double>(-0.6, 0.52);
  c.normalize();
  QuantumState state(c, "two-level");

  const double e_mid = 0.37;
  QuantumState forward = prop.step(state, e_mid, Direction::forward);
  QuantumState back = prop.step(forward, e_mid, Direction::backward);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(back.coeffs[i] - c[i]) <= 1e-12);
}

TEST_CASE("dimension and basis mismatches are rejected") {
  SystemModel model = two_level(0.0, 1.0, 0.2);
  TimeGrid grid(1.0, 4);
  Propagator prop(model, grid);

  QuantumState wrong_dim(Eigen::VectorXcd::Ones(3).normalized(), "two-level");
  CHECK_THROWS_AS(prop.step(wrong_dim, 0.0, Direction::forward), std::invalid_argument);

  QuantumState wrong_basis(Eigen::VectorXcd::Ones(2).normalized(), "other");
  CHECK_THROWS_AS(prop.step(wrong_basis, 0.0, Direction::forward), std::invalid_argument);

  TimeGrid other(1.0, 8);
  QuantumState ok(Eigen::VectorXcd::Ones(2).normalized(), "two-level");
  CHECK_THROWS_AS(prop.propagate(ok, ControlField::zero(other), Direction::forward),
                  std::invalid_argument);
}

TEST_CASE("global error vs exact oracle halves quadratically in dt") {
  RotorModel rotor = build_rotor(RotorParams{});
  const double e_const = 2.5e-3;
  const double total_time = 4.0e4;

  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(rotor.system.dim());
  c0[0] = 1.0;
  const Eigen::VectorXcd exact =
      exact_constant_field(rotor.system, e_const, total_time, c0);

  auto split_error = [&](int n_steps) {
    TimeGrid grid(total_time, n_steps);
    Propagator prop(rotor.system, grid);
    ControlField field(grid, Eigen::VectorXd::Constant(grid.n_nodes(), e_const));
    QuantumState psi0(c0, rotor.system.name());
    Trajectory traj = prop.propagate(psi0, field, Direction::forward);
    return (traj.states.col(grid.n_steps()) - exact).norm();
  };

  const double e1 = split_error(128);
  const double e2 = split_error(256);
  const double e3 = split_error(512);
  CHECK(e1 / e2 >= 3.4);
  CHECK(e1 / e2 <= 4.6);
  CHECK(e2 / e3 >= 3.4);
  CHECK(e2 / e3 <= 4.6);
}

TEST_CASE("zero-field propagation keeps an eigenstate stationary") {
  RotorModel rotor = build_rotor(RotorParams{});
  const double t_rot = rotational_period(rotor.params);
  TimeGrid grid(t_rot, 2048);
  Propagator prop(rotor.system, grid);

  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(rotor.system.dim());
  c0[3] = 1.0;
  Trajectory traj = prop.propagate(QuantumState(c0, rotor.system.name()),
                                   ControlField::zero(grid), Direction::forward);
  for (int i = 0; i < traj.n_nodes(); ++i) {
    CHECK(std::abs(std::abs(traj.states(3, i)) - 1.0) <= 1e-12);
    CHECK(std::abs(traj.states.col(i).norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("zero-field orientation of the rotor ground state stays zero") {
  RotorModel rotor = build_rotor(RotorParams{});
  const double t_rot = rotational_period(rotor.params);
  TimeGrid grid(t_rot, 1024);
  Propagator prop(rotor.system, grid);

  Trajectory traj = prop.propagate(ground_state(rotor), ControlField::zero(grid),
                                   Direction::forward);
  // cos(theta) has no diagonal element in the |j,0> basis, so a pure
  // eigenstate can never be oriented.
  for (int i = 0; i < traj.n_nodes(); ++i) {
    const double c = expectation_cos_theta(traj.state_at(i), rotor);
    CHECK(std::abs(c) <= 1e-12);
  }
}

TEST_CASE("forward propagation then backward recovers the initial state") {
  RotorParams params;
  RotorModel rotor = build_rotor(params);
  const double t_rot = rotational_period(params);
  TimeGrid grid(t_rot, 4096);
  Propagator prop(rotor.system, grid);
  ControlField pulse = guess_pulse(params, grid);

  QuantumState psi0 = ground_state(rotor);
  Trajectory fwd = prop.propagate(psi0, pulse, Direction::forward);
  Trajectory bwd = prop.propagate(fwd.state_at(grid.n_steps()), pulse,
                                  Direction::backward);
  CHECK((bwd.states.col(0) - psi0.coeffs).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("norm is conserved across a full driven propagation") {
  RotorParams params;
  RotorModel rotor = build_rotor(params);
  TimeGrid grid(rotational_period(params), 16384);
  Propagator prop(rotor.system, grid);
  ControlField pulse = guess_pulse(params, grid);

  Trajectory traj = prop.propagate(ground_state(rotor), pulse, Direction::forward);
  double worst = 0.0;
  for (int i = 0; i < traj.n_nodes(); ++i)
    worst = std::max(worst, std::abs(traj.states.col(i).norm() - 1.0));
  CHECK(worst <= 1e-10);
}

TEST_CASE("backward propagation is the adjoint of forward propagation") {
  RotorParams params;
  RotorModel rotor = build_rotor(params);
  TimeGrid grid(rotational_period(params), 4096);
  Propagator prop(rotor.system, grid);
  ControlField pulse = guess_pulse(params, grid);

  QuantumState psi0 = ground_state(rotor);
  QuantumState chi_end = target_state(params);

  Trajectory psi = prop.propagate(psi0, pulse, Direction::forward);
  Trajectory chi = prop.propagate(chi_end, pulse, Direction::backward);

  const complex<double> ref = chi.states.col(0).dot(psi.states.col(0));
  for (int i = 0; i < grid.n_nodes(); ++i) {
    const complex<double> overlap = chi.states.col(i).dot(psi.states.col(i));
    CHECK(std::abs(overlap - ref) <= 1e-9);
  }
}

TEST_CASE("propagation with a dense non-diagonal H0 also conserves norm") {
  Eigen::MatrixXd h0(3, 3);
  h0 << 0.5, 0.1, 0.0,
        0.1, 0.9, -0.2,
        0.0, -0.2, 1.7;
  Eigen::MatrixXd h1(3, 3);
  h1 << 0.0, 0.3, 0.1,
        0.3, 0.0, 0.25,
        0.1, 0.25, 0.0;
  SystemModel model(HermitianOp::from_real(h0), HermitianOp::from_real(h1),
                    {"0", "1", "2"}, "dense3");

  TimeGrid grid(20.0, 512);
  Propagator prop(model, grid);
  Eigen::VectorXd e(grid.n_nodes());
  for (int i = 0; i < grid.n_nodes(); ++i) e[i] = 0.4 * std::sin(0.7 * grid.node(i));
  ControlField field(grid, e);

  Eigen::VectorXcd c0(3);
  c0 << 1.0, complex<double>(0.0, 1.0), 0.5;
  c0.normalize();
  Trajectory traj = prop.propagate(QuantumState(c0, "dense3"), field,
                                   Direction::forward);
  for (int i = 0; i < traj.n_nodes(); ++i)
    CHECK(std::abs(traj.states.col(i).norm() - 1.0) <= 1e-11);

  // and the constant-field oracle also applies on the dense model
  const double e_const = 0.3;
  const Eigen::VectorXcd exact = exact_constant_field(model, e_const, 20.0, c0);
  ControlField cf(grid, Eigen::VectorXd::Constant(grid.n_nodes(), e_const));
  Trajectory traj2 = prop.propagate(QuantumState(c0, "dense3"), cf, Direction::forward);
  CHECK((traj2.states.col(grid.n_steps()) - exact).norm() <= 5e-5);
}
