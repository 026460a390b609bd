#include "zac/hermitian_op.hpp"

#include <stdexcept>
#include <utility>

namespace zac {

HermitianOp::HermitianOp(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw std::invalid_argument("HermitianOp: matrix must be square and non-empty");

  max_abs_ = m_.cwiseAbs().maxCoeff();
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * max_abs_)
    throw std::invalid_argument("HermitianOp: matrix is not hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("HermitianOp: eigendecomposition failed");
  evals_ = solver.eigenvalues();
  evecs_ = solver.eigenvectors();

  // The cached decomposition must reproduce the matrix.
  const Eigen::MatrixXcd rebuilt =
      evecs_ * evals_.asDiagonal() * evecs_.adjoint();
  const double fro = m_.norm();
  const double err = (rebuilt - m_).norm();
  if (err > 1e-10 * (fro > 0.0 ? fro : 1.0))
    throw std::runtime_error("HermitianOp: eigendecomposition does not reconstruct the matrix");
}

HermitianOp HermitianOp::from_real(const Eigen::MatrixXd& m) {
  return HermitianOp(m.cast<std::complex<double>>());
}

}  // namespace zac
