#pragma once

#include <cmath>
#include <stdexcept>

namespace zac {

/// Uniform time grid on [0, tf] with n_steps intervals and n_steps+1 nodes
/// t_i = i * dt.
class TimeGrid {
 public:
  TimeGrid(double tf, int n_steps) : tf_(tf), n_steps_(n_steps) {
    if (!std::isfinite(tf) || tf <= 0.0)
      throw std::invalid_argument("TimeGrid: tf must be finite and positive");
    if (n_steps < 1)
      throw std::invalid_argument("TimeGrid: n_steps must be at least 1");
    dt_ = tf_ / n_steps_;
  }

  double tf() const { return tf_; }
  int n_steps() const { return n_steps_; }
  int n_nodes() const { return n_steps_ + 1; }
  double dt() const { return dt_; }
  double node(int i) const { return i * dt_; }

  bool operator==(const TimeGrid& other) const {
    return tf_ == other.tf_ && n_steps_ == other.n_steps_;
  }
  bool operator!=(const TimeGrid& other) const { return !(*this == other); }

 private:
  double tf_;
  int n_steps_;
  double dt_;
};

}  // namespace zac
