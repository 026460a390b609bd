#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zac/rotor.hpp"

namespace zac {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { co_oct, co_oct_sweep, surrogate_local };

const char* experiment_name(ExperimentKind kind);

/// Fully resolved run configuration, all quantities in atomic units.
/// Parsed from a line-based `key = value` file with one-level [section]
/// headers; keys carry explicit unit suffixes (_au, _fs, _cm1) and the
/// loader converts on the spot. Everything is deterministic: no seeds.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::co_oct;

  // [model]
  RotorParams rotor;

  // [grid]
  int n_steps = 16384;

  // [oct]
  // The energy-penalty weight defaults to 100 in reduced-field units
  // (control variable d*E), which is 100 * d^2 = 0.1936 a.u. for the field
  // normalization used by the library. mu_tf is the dimensionless product
  // of the area weight and the pulse duration; the experiment converts it
  // to a.u. as mu_au = mu_scale * mu_tf / t_f.
  double lambda = 0.1936;
  double mu_tf = 0.0;                // single-run area weight times tf
  std::vector<double> mu_tf_list{0.0, 0.25, 0.5, 1.0, 1.8, 3.0, 4.5};
  double mu_scale = 0.4;
  int max_iterations = 200;
  double target_fidelity = 0.99;

  // [local]
  double epsilon = 0.7;
  std::vector<double> local_mu_list{0.0, 0.01, 0.05};
  double local_tf = 600.0;
  int local_n_steps = 262144;
  double seed_admixture = 0.1;
  int filter_bins = 3;
  int output_stride = 32;  // node decimation for the local-run CSV

  // [output]
  std::string out_dir = "out";

  static RunConfig load(const std::string& path,
                        const std::vector<std::string>& overrides = {});
  static RunConfig parse(const std::string& text, const std::string& origin,
                         const std::vector<std::string>& overrides = {});

  /// Flat key/value view of every physical setting (a.u.), used for the
  /// metadata block embedded in output files. The output directory is not
  /// part of it.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

}  // namespace zac
