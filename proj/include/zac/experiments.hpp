#pragma once

#include <string>

#include "zac/config.hpp"

namespace zac {

struct ExperimentResult {
  bool contract_ok = true;  // false when a monotonicity contract was violated
};

/// Fixed-width deterministic formatting used for every CSV value.
std::string format_value(double v);

ExperimentResult run_co_oct(const RunConfig& config);
ExperimentResult run_mu_sweep(const RunConfig& config);
ExperimentResult run_surrogate_local(const RunConfig& config);

/// Dispatch on config.experiment.
ExperimentResult run_experiment(const RunConfig& config);

}  // namespace zac
