#pragma once

#include <Eigen/Dense>

namespace zac {

/// Dense hermitian operator. Hermiticity is validated on construction and
/// the eigendecomposition is computed once and cached; the object is
/// immutable afterwards and safe to share across threads.
class HermitianOp {
 public:
  explicit HermitianOp(Eigen::MatrixXcd m);

  static HermitianOp from_real(const Eigen::MatrixXd& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }
  double max_abs() const { return max_abs_; }

 private:
  Eigen::MatrixXcd m_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;
  double max_abs_ = 0.0;
};

}  // namespace zac
