#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

namespace zac {

/// Complex coefficient vector over the ordered orthonormal basis of a
/// SystemModel. basis_id ties the state to the model it was built for.
struct QuantumState {
  Eigen::VectorXcd coeffs;
  std::string basis_id;

  QuantumState() = default;
  QuantumState(Eigen::VectorXcd c, std::string id)
      : coeffs(std::move(c)), basis_id(std::move(id)) {}

  int dim() const { return static_cast<int>(coeffs.size()); }
  double norm() const { return coeffs.norm(); }
};

}  // namespace zac
