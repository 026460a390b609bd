#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zac/hermitian_op.hpp"

namespace zac {

/// Finite-dimensional system H(t) = h0 + E(t) * h1 over a named basis.
class SystemModel {
 public:
  SystemModel(HermitianOp h0, HermitianOp h1,
              std::vector<std::string> basis_labels, std::string name)
      : h0_(std::move(h0)),
        h1_(std::move(h1)),
        basis_labels_(std::move(basis_labels)),
        name_(std::move(name)) {
    if (h0_.dim() != h1_.dim())
      throw std::invalid_argument("SystemModel: h0 and h1 dimensions differ");
    if (h0_.dim() < 2)
      throw std::invalid_argument("SystemModel: dimension must be at least 2");
    if (static_cast<int>(basis_labels_.size()) != h0_.dim())
      throw std::invalid_argument("SystemModel: one basis label per dimension required");
  }

  int dim() const { return h0_.dim(); }
  const HermitianOp& h0() const { return h0_; }
  const HermitianOp& h1() const { return h1_; }
  const std::vector<std::string>& basis_labels() const { return basis_labels_; }
  const std::string& name() const { return name_; }

 private:
  HermitianOp h0_;
  HermitianOp h1_;
  std::vector<std::string> basis_labels_;
  std::string name_;
};

}  // namespace zac
