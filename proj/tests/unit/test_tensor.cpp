#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rank1lab/errors.hpp"
#include "rank1lab/tensor.hpp"

using namespace rank1lab;

namespace {

const Vec3 e1 = Vec3::unit(0);
const Vec3 e2 = Vec3::unit(1);
const Vec3 e3 = Vec3::unit(2);

void expect_mat_near(const Mat3& a, const Mat3& b, double tol) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(a(i, j), b(i, j), tol) << "(" << i << "," << j << ")";
}

}  // namespace

TEST(Det, Examples) {
  EXPECT_EQ(det(Mat3::identity()), 1.0);
  EXPECT_EQ(det(Mat3::diag(2, 3, 4)), 24.0);
  const Mat3 equal_rows = Mat3::from_rows({1, 2, 3}, {4, 5, 6}, {1, 2, 3});
  EXPECT_EQ(det(equal_rows), 0.0);
}

TEST(Det, MatchesLeibnizOracle) {
  oracle::Gen g(11);
  for (int k = 0; k < 500; ++k) {
    const Mat3 a = g.mat(2.0);
    EXPECT_NEAR(det(a), oracle::det_leibniz(a), 1e-13);
  }
}

TEST(Cofactor, Examples) {
  EXPECT_EQ(cofactor(Mat3::identity()), Mat3::identity());
  EXPECT_EQ(cofactor(Mat3::diag(2, 3, 4)), Mat3::diag(12, 8, 6));
  // integer rank-one input: every minor cancels exactly
  EXPECT_EQ(cofactor(dyad({1, -2, 3}, {4, 5, -6})), Mat3::zero());
}

TEST(Cofactor, MatchesMinorOracleIncludingSingular) {
  oracle::Gen g(12);
  for (int k = 0; k < 500; ++k) {
    Mat3 a = g.mat(2.0);
    if (k % 3 == 0) a = Mat3::from_rows(a.row(0), a.row(1), 2.0 * a.row(1));
    expect_mat_near(cofactor(a), oracle::cofactor_minors(a), 1e-13);
    const double n = std::max(1.0, norm(a));
    EXPECT_LE(norm(a * cofactor(a).transpose() - det(a) * Mat3::identity()), 1e-13 * n * n * n);
  }
}

TEST(Cofactor, RankOneAnnihilatedToRoundoff) {
  oracle::Gen g(13);
  for (int k = 0; k < 1000; ++k) {
    const Vec3 a = g.vec(), b = g.vec();
    EXPECT_LE(norm(cofactor(dyad(a, b))), 1e-15 * std::max(1.0, dot(a, a) * dot(b, b)));
  }
}

TEST(Cofactor, MultiplicativeAndCommutesWithInverse) {
  oracle::Gen g(14);
  for (int k = 0; k < 500; ++k) {
    const Mat3 a = g.gl_plus(), b = g.gl_plus();
    const double na = norm(a), nb = norm(b);
    EXPECT_LE(norm(cofactor(a) * cofactor(b) - cofactor(a * b)), 1e-11 * na * na * nb * nb);
    const Mat3 lhs = inverse(cofactor(a));
    const Mat3 rhs = cofactor(inverse(a));
    EXPECT_LE(norm(lhs - rhs), 1e-11 * norm(rhs));
  }
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse(Mat3::identity()), Mat3::identity());
  expect_mat_near(inverse(Mat3::diag(2, 4, 5)), Mat3::diag(0.5, 0.25, 0.2), 1e-16);
  EXPECT_THROW(inverse(Mat3::zero()), SingularError);
  EXPECT_THROW(inverse(Mat3::from_rows({1, 2, 3}, {2, 4, 6}, {0, 0, 1})), SingularError);
}

TEST(Inverse, MatchesGaussJordan) {
  oracle::Gen g(15);
  for (int k = 0; k < 500; ++k) {
    const Mat3 a = g.gl_plus(0.6);
    expect_mat_near(inverse(a), oracle::inverse_gauss_jordan(a), 1e-11);
    expect_mat_near(a * inverse(a), Mat3::identity(), 1e-12);
  }
}

TEST(Inverse, ThresholdIsScaleAware) {
  // det 1e-3, but |A|^3 ~ 2.8e9 puts the threshold at ~2.8e-3
  const Mat3 big = 1e3 * Mat3::diag(1.0, 1.0, 1e-12);
  EXPECT_THROW(inverse(big), SingularError);
  // small matrices fall back to the absolute floor 1e-12
  EXPECT_THROW(inverse(1e-5 * Mat3::identity()), SingularError);
  EXPECT_NO_THROW(inverse(1e-3 * Mat3::identity()));
}

TEST(Dyad, Examples) {
  Mat3 expected;
  expected(0, 1) = 1.0;
  EXPECT_EQ(dyad(e1, e2), expected);
  EXPECT_EQ(dyad(Vec3::zero(), {1, 2, 3}), Mat3::zero());
}

TEST(Dyad, TraceAndMatchesOuterProduct) {
  oracle::Gen g(16);
  for (int k = 0; k < 200; ++k) {
    const Vec3 a = g.vec(), b = g.vec();
    EXPECT_EQ(dyad(a, b), oracle::outer(a, b));
    EXPECT_NEAR(inner(Mat3::identity(), dyad(a, b)), a[0] * b[0] + a[1] * b[1] + a[2] * b[2],
                1e-15);
  }
}

TEST(DyadCompose, Examples) {
  EXPECT_EQ(dyad_compose(e1, e2, e2, e3), dyad(e1, e3));
  EXPECT_EQ(dyad_compose(e1, e2, e3, e1), Mat3::zero());
}

TEST(DyadCompose, MatchesMatrixProduct) {
  oracle::Gen g(17);
  for (int k = 0; k < 1000; ++k) {
    const Vec3 a = g.vec(), b = g.vec(), c = g.vec(), d = g.vec();
    const Mat3 product = oracle::matmul(oracle::outer(a, b), oracle::outer(c, d));
    EXPECT_LE(oracle::max_abs(dyad_compose(a, b, c, d) - product), 1e-14);
  }
}

TEST(CofDerivative, Examples) {
  expect_mat_near(cof_directional_derivative(Mat3::identity(), Mat3::identity()),
                  2.0 * Mat3::identity(), 1e-15);
  expect_mat_near(cof_directional_derivative(Mat3::identity(), dyad(e1, e2)), -dyad(e2, e1),
                  1e-15);
  EXPECT_THROW(cof_directional_derivative(Mat3::zero(), Mat3::identity()), SingularError);
}

TEST(CofDerivative, MatchesCentralDifference) {
  oracle::Gen g(18);
  const double h = 1e-5;
  for (int k = 0; k < 300; ++k) {
    const Mat3 f = g.gl_plus(), dir = g.mat();
    const Mat3 fd = (1.0 / (2 * h)) * (oracle::cofactor_minors(f + h * dir) -
                                       oracle::cofactor_minors(f - h * dir));
    const Mat3 exact = cof_directional_derivative(f, dir);
    EXPECT_LE(norm(exact - fd), 1e-6 * norm(exact));
  }
}

TEST(CofExpansion, Examples) {
  EXPECT_EQ(cof_rank_one_expansion(Mat3::zero()), Mat3::identity());
  EXPECT_EQ(cof_rank_one_expansion(dyad(e1, e1)), Mat3::diag(1, 2, 2));
  EXPECT_EQ(cofactor(Mat3::diag(2, 1, 1)), Mat3::diag(1, 2, 2));
}

TEST(CofExpansion, EqualsCofactorOfIdentityPlusH) {
  oracle::Gen g(19);
  for (int k = 0; k < 500; ++k) {
    const Mat3 h = g.mat(2.0);
    EXPECT_LE(oracle::max_abs(cof_rank_one_expansion(h) -
                              oracle::cofactor_minors(Mat3::identity() + h)),
              1e-12 * (1.0 + inner(h, h)));
  }
}

TEST(RankOnePerturbation, CanonicalForm) {
  const RankOnePerturbation p({4, 0, 0}, {0, 1, 0});
  EXPECT_DOUBLE_EQ(norm(p.xi()), 2.0);
  EXPECT_DOUBLE_EQ(norm(p.eta()), 2.0);
  EXPECT_DOUBLE_EQ(p.amplitude(), 4.0);
  EXPECT_EQ(p.matrix(), dyad({4, 0, 0}, {0, 1, 0}));
  EXPECT_FALSE(p.is_zero());

  EXPECT_TRUE(RankOnePerturbation(Vec3::zero(), {1, 2, 3}).is_zero());
  EXPECT_TRUE(RankOnePerturbation({1, 2, 3}, Vec3::zero()).is_zero());
  EXPECT_TRUE(RankOnePerturbation::zero().is_zero());
}

TEST(RankOnePerturbation, ProductInvariantUnderRescaling) {
  oracle::Gen g(20);
  for (int k = 0; k < 100; ++k) {
    const Vec3 xi = g.vec(), eta = g.vec();
    const double c = g.uniform(0.1, 10.0) * (k % 2 ? 1.0 : -1.0);
    const RankOnePerturbation p(xi, eta), q(c * xi, (1.0 / c) * eta);
    EXPECT_LE(norm(p.matrix() - q.matrix()), 1e-14 * (1.0 + norm(p.matrix())));
    EXPECT_NEAR(norm(q.xi()), norm(q.eta()), 1e-14);
  }
}

TEST(DetRankOneUpdate, Examples) {
  EXPECT_DOUBLE_EQ(det_rank_one_update(Mat3::identity(), {e1, e1}), 2.0);
  EXPECT_DOUBLE_EQ(det_rank_one_update(Mat3::diag(2, 3, 4), {e1, e2}), 24.0);
}

TEST(DetRankOneUpdate, MatchesDeterminantAndIsAffine) {
  oracle::Gen g(21);
  for (int k = 0; k < 1000; ++k) {
    Mat3 f = g.mat(1.5);
    if (k % 5 == 0) f = Mat3::from_rows(f.row(0), f.row(0), f.row(2));  // singular F allowed
    const RankOnePerturbation p(g.vec(), g.vec());
    const double exact = oracle::det_leibniz(f + oracle::outer(p.xi(), p.eta()));
    const double scale = std::pow(norm(f) + p.amplitude(), 3.0);
    EXPECT_LE(std::abs(det_rank_one_update(f, p) - exact), 1e-13 * scale);
    const double mid = det(f + 0.5 * p.matrix());
    EXPECT_LE(std::abs(mid - 0.5 * (det(f) + det(f + p.matrix()))), 1e-13 * scale);
  }
}

TEST(SegmentInGlPlus, Examples) {
  EXPECT_TRUE(segment_in_gl_plus(Mat3::identity(), {2.0 * e1, e1}));
  EXPECT_FALSE(segment_in_gl_plus(Mat3::identity(), {-2.0 * e1, e1}));
  EXPECT_TRUE(segment_in_gl_plus(Mat3::identity(), RankOnePerturbation::zero()));
  EXPECT_FALSE(segment_in_gl_plus(Mat3::diag(-1, 1, 1), RankOnePerturbation::zero()));
}

TEST(SegmentInGlPlus, AgreesWithDenseSampling) {
  oracle::Gen g(22);
  for (int k = 0; k < 300; ++k) {
    const Mat3 f = g.gl_plus();
    const RankOnePerturbation p(g.uniform(0.1, 3.0) * g.unit(), g.unit());
    bool dense = true;
    for (int t = 0; t <= 200; ++t)
      dense = dense && oracle::det_leibniz(f + (t / 200.0) * p.matrix()) > 0.0;
    EXPECT_EQ(segment_in_gl_plus(f, p), dense);
  }
}

TEST(JumpIdentity, CofactorTimesEtaIsContinuous) {
  oracle::Gen g(23);
  for (int k = 0; k < 1000; ++k) {
    const Mat3 f = g.mat(1.5);
    const Vec3 xi = g.vec(2.0), eta = g.vec(2.0);
    const Vec3 lhs = oracle::cofactor_minors(f + oracle::outer(xi, eta)) * eta;
    const Vec3 rhs = oracle::cofactor_minors(f) * eta;
    const double s = std::pow(norm(f) + norm(xi) * norm(eta), 2.0) * norm(eta);
    EXPECT_LE(norm(lhs - rhs), 1e-13 * std::max(1.0, s));
  }
}

TEST(RankOneFactor, Examples) {
  const auto f = rank_one_factor(3.0 * dyad(e1, e2));
  ASSERT_TRUE(f.has_value());
  const double r3 = std::sqrt(3.0);
  EXPECT_NEAR(f->first[0], r3, 1e-14);
  EXPECT_NEAR(f->second[1], r3, 1e-14);
  EXPECT_NEAR(norm(f->first), norm(f->second), 1e-14);

  EXPECT_FALSE(rank_one_factor(Mat3::identity()).has_value());

  const auto z = rank_one_factor(Mat3::zero());
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ(z->first, Vec3::zero());
  EXPECT_EQ(z->second, Vec3::zero());
}

TEST(RankOneFactor, SignConventionMakesLargestEntryPositive) {
  const auto f = rank_one_factor(-3.0 * dyad(e1, e2));
  ASSERT_TRUE(f.has_value());
  EXPECT_GT(f->first[0], 0.0);
  EXPECT_LT(f->second[1], 0.0);
}

TEST(RankOneFactor, RecoversRandomDyadsAndRejectsRankTwo) {
  oracle::Gen g(24);
  for (int k = 0; k < 500; ++k) {
    const Vec3 a = g.vec(3.0), b = g.vec(3.0);
    const Mat3 m = oracle::outer(a, b);
    const auto f = rank_one_factor(m);
    ASSERT_TRUE(f.has_value());
    EXPECT_LE(norm(m - dyad(f->first, f->second)), 1e-12 * norm(m));
    EXPECT_NEAR(norm(f->first), norm(f->second), 1e-12 * norm(f->first));

    // a (x) b = c (x) d  =>  c = l a, d = b / l
    const double l = g.uniform(0.5, 2.0);
    const auto f2 = rank_one_factor(oracle::outer(l * a, (1.0 / l) * b));
    ASSERT_TRUE(f2.has_value());
    EXPECT_LE(norm(f2->first - f->first), 1e-12 * norm(f->first));

    const Vec3 c = g.vec(), d = g.vec();
    EXPECT_FALSE(rank_one_factor(m + 1e-3 * norm(m) * oracle::outer(c, d) +
                                 1e-3 * norm(m) * oracle::outer(cross(c, a), cross(d, b)))
                     .has_value());
  }
}

TEST(RankOneFactor, SphericalDifferenceIsNotRankOne) {
  EXPECT_FALSE(rank_one_factor((std::sqrt(11.7) - std::sqrt(1.16)) * Mat3::identity()).has_value());
}

TEST(SymEigen, DiagonalAndRepeated) {
  const auto v = sym_eigenvalues(Mat3::diag(3, 1, 2));
  EXPECT_NEAR(v[0], 1.0, 1e-14);
  EXPECT_NEAR(v[1], 2.0, 1e-14);
  EXPECT_NEAR(v[2], 3.0, 1e-14);
  const auto w = sym_eigenvalues(2.0 * Mat3::identity());
  for (double x : w) EXPECT_NEAR(x, 2.0, 1e-14);
}

TEST(SymEigen, ResidualsAndOrthonormality) {
  oracle::Gen g(25);
  for (int k = 0; k < 500; ++k) {
    Mat3 a = sym(g.mat(2.0));
    if (k % 4 == 0) {
      // repeated eigenvalue: Q diag(l, l, m) Q^T
      const Mat3 q = rotation_from_axis_angle(g.vec(3.0));
      a = q * Mat3::diag(1.5, 1.5, -0.5) * q.transpose();
    }
    const SymEigen e = sym_eigen(a);
    EXPECT_LE(e.values[0], e.values[1]);
    EXPECT_LE(e.values[1], e.values[2]);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LE(norm(a * e.vectors[i] - e.values[i] * e.vectors[i]), 1e-12 * (1.0 + norm(a)));
      for (std::size_t j = 0; j < 3; ++j)
        EXPECT_NEAR(dot(e.vectors[i], e.vectors[j]), i == j ? 1.0 : 0.0, 1e-12);
    }
    EXPECT_NEAR(e.values[0] + e.values[1] + e.values[2], a.trace(), 1e-12 * (1.0 + norm(a)));
  }
}

TEST(Rotation, RodriguesIsOrthogonal) {
  oracle::Gen g(26);
  for (int k = 0; k < 200; ++k) {
    const Mat3 r = rotation_from_axis_angle(g.vec(3.0));
    expect_mat_near(r * r.transpose(), Mat3::identity(), 1e-14);
    EXPECT_NEAR(det(r), 1.0, 1e-14);
  }
  const Mat3 quarter = rotation_from_axis_angle((std::numbers::pi / 2) * e3);
  const Vec3 v = quarter * e1;
  EXPECT_NEAR(v[1], 1.0, 1e-15);
}
