#pragma once

#include <cstdint>
#include <random>

#include "rank1lab/tensor.hpp"

namespace rank1lab {

struct Seed {
  std::uint64_t value = 0;
  friend constexpr bool operator==(Seed, Seed) = default;
};

/// Child seed for stream `index` of `master` (splitmix64 mixing). Used to give
/// every sample and every worker its own reproducible stream.
Seed derive_seed(Seed master, std::uint64_t index);

/// Engine for sample streams.
using Rng = std::mt19937_64;

inline Rng make_rng(Seed s) { return Rng{s.value}; }

inline constexpr double kMinSampledDet = 0.1;
inline constexpr int kMaxRejections = 1000;

/// F = 1 + spread G, G_ij ~ U[-1, 1], resampled until det F >= 0.1.
/// Throws std::invalid_argument unless spread in (0, 1); SamplerError after
/// kMaxRejections rejections.
Mat3 sample_gl_plus(Rng& rng, double spread);
Mat3 sample_gl_plus(Seed seed, double spread);

/// Uniform point on the unit sphere (normalized standard-normal triple).
Vec3 sample_unit_vec(Rng& rng);
Vec3 sample_unit_vec(Seed seed);

double sample_uniform(Rng& rng, double lo, double hi);

/// Rotation exp(W) for a skew W with axis uniform on the sphere and angle
/// uniform in [0, pi).
Mat3 sample_rotation(Rng& rng);

}  // namespace rank1lab
