#include "zac/control_field.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace zac {

ControlField::ControlField(TimeGrid grid, Eigen::VectorXd samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.n_nodes())
    throw std::invalid_argument("ControlField: sample count does not match grid nodes");
  for (int i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]))
      throw std::invalid_argument("ControlField: non-finite sample");
  }
}

ControlField ControlField::zero(const TimeGrid& grid) {
  return ControlField(grid, Eigen::VectorXd::Zero(grid.n_nodes()));
}

// area() accumulates step by step with the same recurrence as
// running_area() so the two agree bit for bit on the last node.
double area(const ControlField& field) {
  const double dt = field.grid().dt();
  const Eigen::VectorXd& e = field.samples();
  double acc = 0.0;
  for (int i = 1; i < e.size(); ++i) acc += 0.5 * dt * (e[i - 1] + e[i]);
  return acc;
}

Eigen::VectorXd running_area(const ControlField& field) {
  const double dt = field.grid().dt();
  const Eigen::VectorXd& e = field.samples();
  Eigen::VectorXd out(e.size());
  double acc = 0.0;
  out[0] = 0.0;
  for (int i = 1; i < e.size(); ++i) {
    acc += 0.5 * dt * (e[i - 1] + e[i]);
    out[i] = acc;
  }
  return out;
}

}  // namespace zac
