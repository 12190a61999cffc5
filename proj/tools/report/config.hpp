#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rank1lab/materials.hpp"
#include "rank1lab/sampling.hpp"
#include "rank1lab/scan.hpp"

namespace rank1lab::report {

/// Malformed config file, unknown key or model, or an invalid value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  std::string name;  // canonical
  std::map<std::string, double> params;
};

struct RunConfig {
  std::vector<std::string> models;  // canonical names, in run order
  /// Parameter overrides by canonical model name; also used for models that
  /// are only run through single-model subcommands.
  std::map<std::string, std::map<std::string, double>> model_params;
  Seed seed{42};
  double spread = 0.4;
  unsigned threads = 0;

  // budgets
  std::size_t n_F = 1000;
  std::size_t n_dir = 100;
  std::size_t n_refine = 8;
  std::size_t n_starts = 64;
  std::size_t n_search_F = 16;
  double s_max = 3.0;
  std::vector<Mat3> probe_F;

  std::size_t identity_samples = 10000;
  std::size_t gradient_samples = 100;
  std::size_t theorem_samples = 10000;
  std::size_t twin_samples = 100000;
  std::size_t twin_det_samples = 10000;

  double alpha_min = 0.2;
  double alpha_max = 20.0;
  std::size_t alpha_points = 400;
  std::vector<double> pc_lambdas;
  double dilation_min = 0.2;
  double dilation_max = 5.0;
  std::size_t dilation_points = 400;

  std::filesystem::path output_dir = "rank1lab-out";

  /// Defaults: all four models, probes {1, diag(0.4, 1, 1)}, and a
  /// log-uniform lambda grid on [0.2, 5].
  static RunConfig defaults();

  /// Model and parameters for `name` (canonicalized) with any configured overrides. Throws
  /// ConfigError for unknown names.
  ModelSpec model(const std::string& name) const;
  std::shared_ptr<const MaterialModel> build(const std::string& name) const;
  std::vector<std::shared_ptr<const MaterialModel>> build_all() const;

  ScanConfig scan() const;

  /// Throws ConfigError unless every budget is positive, spread is in (0, 1)
  /// and the pressure/dilation windows are well formed.
  void validate() const;
};

/// Applies `key = value` lines on top of `base`. Blank lines and text after
/// '#' are ignored. Keys use dots, e.g. `model.blatz_ko.mu = 1.0`,
/// `scan.n_F = 1000`, `probe.F = 0.4 0 0 0 1 0 0 0 1` (row-major, repeatable).
RunConfig parse_config(const std::string& text, RunConfig base = RunConfig::defaults());
RunConfig load_config(const std::filesystem::path& path,
                      RunConfig base = RunConfig::defaults());

}  // namespace rank1lab::report
