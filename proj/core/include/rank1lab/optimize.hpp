#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace rank1lab {

struct NelderMeadOptions {
  int max_iterations = 200;
  /// Stop when the spread of function values across the simplex and the
  /// simplex diameter both fall below this.
  double tolerance = 1e-10;
  double initial_step = 0.25;
  /// Stop as soon as the best value drops to this level.
  double target = -std::numeric_limits<double>::infinity();
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

/// Derivative-free minimization with the standard coefficients (reflection 1,
/// expansion 2, contraction 1/2, shrink 1/2). The objective may return +inf to
/// mark infeasible points.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts = {});

/// Runs nelder_mead repeatedly from the previous best point with a shrinking
/// initial step, until `restarts` runs complete or the target is reached.
NelderMeadResult nelder_mead_restarted(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
    NelderMeadOptions opts, int restarts);

}  // namespace rank1lab
