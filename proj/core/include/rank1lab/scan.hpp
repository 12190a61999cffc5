#pragma once

#include <cstddef>
#include <vector>

#include "rank1lab/sampling.hpp"
#include "rank1lab/tensor.hpp"

namespace rank1lab {

/// Sampling budgets shared by the ellipticity scan and the injectivity search.
/// Every sample draws from its own stream derived from `seed` and the sample
/// index, so results do not depend on `threads`.
struct ScanConfig {
  Seed seed{42};
  /// Sampled F = 1 + spread G (see sample_gl_plus).
  double spread = 0.4;

  // ellipticity scan
  std::size_t n_F = 1000;
  std::size_t n_dir = 100;
  std::size_t n_refine = 8;
  int refine_iterations = 200;
  double refine_tolerance = 1e-10;

  /// Explicit deformation gradients visited before the sampled ones, by both
  /// the ellipticity scan and the injectivity search.
  std::vector<Mat3> probe_F;

  // injectivity search
  std::size_t n_search_F = 16;
  std::size_t n_starts = 64;
  double s_max = 3.0;
  int search_iterations = 400;
  int search_restarts = 6;

  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

/// Stream tags so that different suites never share a sample stream.
namespace stream {
inline constexpr std::uint64_t kScanF = 1;
inline constexpr std::uint64_t kScanDirections = 2;
inline constexpr std::uint64_t kSearchF = 3;
inline constexpr std::uint64_t kSearchStarts = 4;
}  // namespace stream

}  // namespace rank1lab
