#include "rank1lab/sampling.hpp"

#include <numbers>
#include <stdexcept>

#include "rank1lab/errors.hpp"

namespace rank1lab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Seed derive_seed(Seed master, std::uint64_t index) {
  return Seed{splitmix64(master.value ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

double sample_uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Mat3 sample_gl_plus(Rng& rng, double spread) {
  if (!(spread > 0.0 && spread < 1.0))
    throw std::invalid_argument("sample_gl_plus: spread must lie in (0, 1)");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    Mat3 g;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) g(i, j) = u(rng);
    const Mat3 f = Mat3::identity() + spread * g;
    if (det(f) >= kMinSampledDet) return f;
  }
  throw SamplerError("sample_gl_plus: rejection budget exhausted (spread too large?)");
}

Mat3 sample_gl_plus(Seed seed, double spread) {
  Rng rng = make_rng(seed);
  return sample_gl_plus(rng, spread);
}

Vec3 sample_unit_vec(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Vec3 v{n(rng), n(rng), n(rng)};
    const double len = norm(v);
    if (len > 1e-12) return (1.0 / len) * v;
  }
}

Vec3 sample_unit_vec(Seed seed) {
  Rng rng = make_rng(seed);
  return sample_unit_vec(rng);
}

Mat3 sample_rotation(Rng& rng) {
  const Vec3 axis = sample_unit_vec(rng);
  const double angle = sample_uniform(rng, 0.0, std::numbers::pi);
  return rotation_from_axis_angle(angle * axis);
}

}  // namespace rank1lab
