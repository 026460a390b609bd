#pragma once

#include <Eigen/Dense>

#include "zac/time_grid.hpp"

namespace zac {

/// Real control signal E(t) sampled at the nodes of a uniform grid.
/// Samples must be finite at every node.
class ControlField {
 public:
  ControlField(TimeGrid grid, Eigen::VectorXd samples);

  static ControlField zero(const TimeGrid& grid);

  const TimeGrid& grid() const { return grid_; }
  const Eigen::VectorXd& samples() const { return samples_; }
  double operator[](int i) const { return samples_[i]; }
  int n_nodes() const { return static_cast<int>(samples_.size()); }

  /// Field value at the midpoint of the step from node i to node i+1
  /// (linear interpolation of the node samples).
  double midpoint(int i) const { return 0.5 * (samples_[i] + samples_[i + 1]); }

 private:
  TimeGrid grid_;
  Eigen::VectorXd samples_;
};

/// Trapezoidal integral of E over the full grid.
double area(const ControlField& field);

/// Cumulative trapezoidal integral at every node; the first entry is 0 and
/// the last entry is bit-identical to area(field).
Eigen::VectorXd running_area(const ControlField& field);

}  // namespace zac
