#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "zac/propagator.hpp"
#include "zac/rotor.hpp"
#include "zac/units.hpp"

using namespace zac;

TEST_CASE("unit conversion factors agree with CODATA values") {
  CHECK(units::cm1_to_au == doctest::Approx(1.0 / 219474.6313632).epsilon(1e-6));
  CHECK(units::au_time_fs == doctest::Approx(2.4188843265857e-2).epsilon(1e-6));
  // the default B reproduces 1.9312 cm^-1
  CHECK(RotorParams{}.b == doctest::Approx(1.9312 * units::cm1_to_au).epsilon(1e-5));
}

TEST_CASE("rotor H0 is the B j(j+1) ladder") {
  RotorModel rotor = build_rotor(RotorParams{});
  const Eigen::MatrixXcd& h0 = rotor.system.h0().matrix();
  CHECK(h0(0, 0).real() == 0.0);
  CHECK(h0(1, 1).real() == doctest::Approx(2.0 * rotor.params.b).epsilon(1e-15));
  CHECK(h0(15, 15).real() == doctest::Approx(240.0 * rotor.params.b).epsilon(1e-15));
  for (int i = 0; i < h0.rows(); ++i)
    for (int j = 0; j < h0.cols(); ++j)
      if (i != j) CHECK(h0(i, j) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("cos(theta) matrix: selection rule, symmetry, first element") {
  RotorModel rotor = build_rotor(RotorParams{});
  const Eigen::MatrixXcd& c = rotor.cos_theta.matrix();

  CHECK(c(0, 1).real() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j < c.cols(); ++j) {
      if (std::abs(i - j) == 1) {
        CHECK(c(i, j).real() != 0.0);
        CHECK(c(i, j) == c(j, i));
      } else {
        CHECK(c(i, j) == std::complex<double>(0.0, 0.0));
      }
    }
  }

  // h1 is -d times the orientation operator
  const Eigen::MatrixXcd& h1 = rotor.system.h1().matrix();
  CHECK((h1 + rotor.params.d * c).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("every cos(theta) element matches Legendre quadrature") {
  RotorModel rotor = build_rotor(RotorParams{});
  const Eigen::MatrixXcd& c = rotor.cos_theta.matrix();
  for (int j = 0; j <= 14; ++j) {
    const double ref = oracles::cos_matrix_element_quadrature(j, j + 1);
    CHECK(std::abs(c(j, j + 1).real() - ref) <= 1e-12);
  }
  // diagonal elements vanish by parity; spot-check with the same oracle
  CHECK(std::abs(oracles::cos_matrix_element_quadrature(3, 3)) <= 1e-14);
}

TEST_CASE("cos(theta) spectral norm is below one") {
  RotorModel rotor = build_rotor(RotorParams{});
  const Eigen::VectorXd& evals = rotor.cos_theta.eigenvalues();
  CHECK(evals.cwiseAbs().maxCoeff() < 1.0);
}

TEST_CASE("target state for j_opt = 1 is the analytic 2x2 eigenvector") {
  RotorParams params;
  params.j_opt = 1;
  QuantumState target = target_state(params);
  CHECK(target.coeffs[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(target.coeffs[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  for (int j = 2; j < target.dim(); ++j)
    CHECK(target.coeffs[j] == std::complex<double>(0.0, 0.0));

  RotorModel rotor = build_rotor(params);
  CHECK(expectation_cos_theta(target, rotor) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("target state matches an independent power-iteration oracle") {
  RotorParams params;  // j_opt = 4
  QuantumState target = target_state(params);

  const int rdim = params.j_opt + 1;
  std::vector<std::vector<double>> c(rdim, std::vector<double>(rdim, 0.0));
  for (int j = 0; j + 1 < rdim; ++j) {
    const double v = (j + 1.0) / std::sqrt((2.0 * j + 1.0) * (2.0 * j + 3.0));
    c[j][j + 1] = v;
    c[j + 1][j] = v;
  }
  const oracles::PowerResult ref = oracles::power_iteration_largest(c);

  for (int j = 0; j < rdim; ++j) {
    const double want = ref.eigenvector[0] > 0 ? ref.eigenvector[j] : -ref.eigenvector[j];
    CHECK(std::abs(target.coeffs[j].real() - want) <= 1e-12);
    CHECK(target.coeffs[j].imag() == 0.0);
  }
  for (int j = rdim; j < target.dim(); ++j)
    CHECK(target.coeffs[j] == std::complex<double>(0.0, 0.0));

  CHECK(std::abs(target.norm() - 1.0) <= 1e-14);
  CHECK(target.coeffs[0].real() > 0.0);

  // <target|cos|target> equals the largest restricted eigenvalue
  RotorModel rotor = build_rotor(params);
  CHECK(std::abs(expectation_cos_theta(target, rotor) - ref.eigenvalue) <= 1e-12);
}

TEST_CASE("orientation expectations on simple states") {
  RotorModel rotor = build_rotor(RotorParams{});
  QuantumState ground = ground_state(rotor);
  CHECK(expectation_cos_theta(ground, rotor) == 0.0);

  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(rotor.system.dim());
  c[0] = 1.0 / std::sqrt(2.0);
  c[1] = 1.0 / std::sqrt(2.0);
  QuantumState plus(c, rotor.system.name());
  CHECK(expectation_cos_theta(plus, rotor) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("rotational period is the exact revival time") {
  RotorParams params;
  RotorModel rotor = build_rotor(params);
  const double t_rot = rotational_period(params);
  CHECK(t_rot == doctest::Approx(std::numbers::pi / params.b).epsilon(1e-15));

  TimeGrid grid(t_rot, 4096);
  Propagator prop(rotor.system, grid);
  Eigen::VectorXcd c0(rotor.system.dim());
  for (int j = 0; j < c0.size(); ++j) c0[j] = std::complex<double>(1.0, 0.3 * j);
  c0.normalize();
  QuantumState psi0(c0, rotor.system.name());

  Trajectory traj = prop.propagate(psi0, ControlField::zero(grid), Direction::forward);
  const std::complex<double> overlap = traj.states.col(grid.n_steps()).dot(c0);
  CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-9);
}

TEST_CASE("guess pulse center value and area") {
  RotorParams params;
  const double t_rot = rotational_period(params);
  TimeGrid grid(t_rot, 16384);  // power-of-two steps put T_rot/4 on a node
  ControlField pulse = guess_pulse(params, grid);

  CHECK(pulse[4096] == params.e_peak);
  CHECK(area(pulse) > 0.0);
  for (int i = 0; i < pulse.n_nodes(); ++i) CHECK(pulse[i] >= 0.0);
  CHECK(pulse.samples().maxCoeff() == params.e_peak);
}

TEST_CASE("guess pulse full width at half maximum") {
  RotorParams params;
  const double t_rot = rotational_period(params);
  TimeGrid grid(t_rot, 32768);
  ControlField pulse = guess_pulse(params, grid);

  // locate the half-maximum crossings by linear interpolation
  const double half = 0.5 * params.e_peak;
  double left = -1.0, right = -1.0;
  for (int i = 1; i < pulse.n_nodes(); ++i) {
    if (pulse[i - 1] < half && pulse[i] >= half)
      left = grid.node(i - 1) + grid.dt() * (half - pulse[i - 1]) / (pulse[i] - pulse[i - 1]);
    if (pulse[i - 1] >= half && pulse[i] < half)
      right = grid.node(i - 1) + grid.dt() * (pulse[i - 1] - half) / (pulse[i - 1] - pulse[i]);
  }
  REQUIRE(left > 0.0);
  REQUIRE(right > left);
  CHECK(std::abs((right - left) - params.fwhm) <= 1e-6 * params.fwhm);
  CHECK(std::abs(0.5 * (left + right) - 0.25 * t_rot) <= 1e-6 * t_rot);

  // FWHM default is 288 fs
  CHECK(params.fwhm == doctest::Approx(288.0 / 0.02418884).epsilon(1e-12));
}

TEST_CASE("guess pulse requires a grid spanning the rotational period") {
  RotorParams params;
  TimeGrid short_grid(0.5 * rotational_period(params), 128);
  CHECK_THROWS_AS(guess_pulse(params, short_grid), std::invalid_argument);
}

TEST_CASE("rotor parameter validation") {
  RotorParams params;
  params.j_opt = 16;  // above j_max
  CHECK_THROWS_AS(build_rotor(params), std::invalid_argument);
  params.j_opt = 0;
  CHECK_THROWS_AS(build_rotor(params), std::invalid_argument);
}
