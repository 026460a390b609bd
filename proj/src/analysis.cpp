#include "zac/analysis.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace zac {

double fidelity(const QuantumState& psi_final, const QuantumState& target) {
  if (psi_final.dim() != target.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(psi_final.coeffs.dot(target.coeffs));
}

namespace {

template <typename F>
double trapezoid(const ControlField& field, F&& f) {
  const double dt = field.grid().dt();
  const Eigen::VectorXd& e = field.samples();
  double acc = 0.0;
  for (int i = 1; i < e.size(); ++i) acc += 0.5 * dt * (f(e[i - 1]) + f(e[i]));
  return acc;
}

}  // namespace

double abs_area(const ControlField& field) {
  return trapezoid(field, [](double x) { return std::abs(x); });
}

double fluence(const ControlField& field) {
  return trapezoid(field, [](double x) { return x * x; });
}

double a_norm(const ControlField& field) {
  const double denom = abs_area(field);
  if (denom == 0.0)
    throw UndefinedMeasureError("a_norm: field is identically zero");
  return area(field) / denom;
}

double b_norm(const ControlField& field_with, const ControlField& field_without) {
  const double denom = area(field_without);
  if (denom == 0.0)
    throw UndefinedMeasureError("b_norm: reference field has zero area");
  return area(field_with) / denom;
}

Measures compute_measures(const ControlField& field,
                          const ControlField* reference_without) {
  Measures m;
  m.area = area(field);
  m.abs_area = abs_area(field);
  m.fluence = fluence(field);
  m.a_norm = a_norm(field);
  if (reference_without != nullptr) m.b_norm = b_norm(field, *reference_without);
  return m;
}

ControlField highpass_filter(const ControlField& field, double cutoff_frequency) {
  if (!(cutoff_frequency >= 0.0))
    throw std::invalid_argument("highpass_filter: cutoff must be >= 0");

  const int n = field.grid().n_steps();  // samples per period
  const double period = n * field.grid().dt();

  std::vector<std::complex<double>> buf(n), spec(n);
  for (int i = 0; i < n; ++i) buf[i] = field[i];

  fftw_plan fwd = fftw_plan_dft_1d(
      n, reinterpret_cast<fftw_complex*>(buf.data()),
      reinterpret_cast<fftw_complex*>(spec.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);

  for (int m = 0; m < n; ++m) {
    const int k = (m <= n / 2) ? m : n - m;  // folded bin index
    if (k / period <= cutoff_frequency) spec[m] = 0.0;
  }

  fftw_plan bwd = fftw_plan_dft_1d(
      n, reinterpret_cast<fftw_complex*>(spec.data()),
      reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);

  const double scale = field.samples().cwiseAbs().maxCoeff();
  Eigen::VectorXd out(field.n_nodes());
  for (int i = 0; i < n; ++i) {
    const std::complex<double> v = buf[i] / static_cast<double>(n);
    if (std::abs(v.imag()) > 1e-10 * (scale > 0.0 ? scale : 1.0))
      throw std::runtime_error("highpass_filter: imaginary residue after inverse DFT");
    out[i] = v.real();
  }
  out[n] = out[0];  // periodic image of the first node
  return ControlField(field.grid(), std::move(out));
}

}  // namespace zac
