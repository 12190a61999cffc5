#include <gtest/gtest.h>

#include <atomic>
#include <set>
#include <stdexcept>
#include <vector>

#include "rank1lab/errors.hpp"
#include "rank1lab/parallel.hpp"
#include "rank1lab/sampling.hpp"

using namespace rank1lab;

TEST(Sampling, SameSeedSameStream) {
  EXPECT_EQ(sample_gl_plus(Seed{7}, 0.4), sample_gl_plus(Seed{7}, 0.4));
  EXPECT_EQ(sample_unit_vec(Seed{7}), sample_unit_vec(Seed{7}));
  EXPECT_NE(sample_gl_plus(Seed{7}, 0.4), sample_gl_plus(Seed{8}, 0.4));
}

TEST(Sampling, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(Seed{42}, i).value);
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_EQ(derive_seed(Seed{42}, 3), derive_seed(Seed{42}, 3));
  EXPECT_NE(derive_seed(Seed{42}, 3), derive_seed(Seed{43}, 3));
}

TEST(Sampling, RejectionGuaranteesDeterminantFloor) {
  double worst = 1e300;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const Mat3 f = sample_gl_plus(derive_seed(Seed{1}, i), 0.4);
    worst = std::min(worst, det(f));
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        ASSERT_LE(std::abs(f(r, c) - (r == c ? 1.0 : 0.0)), 0.4);
  }
  EXPECT_GE(worst, kMinSampledDet);
}

TEST(Sampling, SmallSpreadApproachesIdentity) {
  const Mat3 f = sample_gl_plus(Seed{5}, 1e-9);
  EXPECT_LE(norm(f - Mat3::identity()), 3e-9);
}

TEST(Sampling, SpreadOutsideOpenUnitIntervalRejected) {
  EXPECT_THROW(sample_gl_plus(Seed{1}, 0.0), std::invalid_argument);
  EXPECT_THROW(sample_gl_plus(Seed{1}, 1.0), std::invalid_argument);
  EXPECT_THROW(sample_gl_plus(Seed{1}, -0.5), std::invalid_argument);
}

TEST(Sampling, UnitVectorsAreUnitAndRoughlyIsotropic) {
  Vec3 mean{};
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Vec3 v = sample_unit_vec(derive_seed(Seed{2}, static_cast<std::uint64_t>(i)));
    ASSERT_NEAR(norm(v), 1.0, 1e-14);
    mean += (1.0 / n) * v;
  }
  // standard error of each mean component is ~ 1/sqrt(3n) ~ 0.004
  EXPECT_LT(norm(mean), 0.03);
}

TEST(Sampling, RotationsAreProper) {
  Rng rng = make_rng(Seed{3});
  for (int i = 0; i < 100; ++i) {
    const Mat3 r = sample_rotation(rng);
    EXPECT_LE(norm(r * r.transpose() - Mat3::identity()), 1e-14);
    EXPECT_NEAR(det(r), 1.0, 1e-14);
  }
}

TEST(Parallel, CoversEveryIndexOnceForAnyWorkerCount) {
  for (unsigned threads : {1u, 2u, 3u, 8u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) ASSERT_EQ(h, 1);
  }
}

TEST(Parallel, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 57) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Parallel, ZeroItemsIsNoop) {
  std::atomic<int> calls{0};
  parallel_for(0, 4, [&](std::size_t) { ++calls; });
  EXPECT_EQ(calls.load(), 0);
}
