#include "rank1lab/tensor.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "rank1lab/errors.hpp"

namespace rank1lab {

double det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Mat3 cofactor(const Mat3& a) {
  Mat3 c;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      c(i, j) = a(i1, j1) * a(i2, j2) - a(i1, j2) * a(i2, j1);
    }
  }
  return c;
}

Mat3 inverse(const Mat3& a) {
  const double d = det(a);
  const double n = norm(a);
  if (!(std::abs(d) > kSingularTol * std::max(1.0, n * n * n)))
    throw SingularError("inverse: matrix is numerically singular");
  return (1.0 / d) * cofactor(a).transpose();
}

Mat3 cof_directional_derivative(const Mat3& f, const Mat3& h) {
  const Mat3 f_inv_t = inverse(f).transpose();
  return (inner(f_inv_t, h) * Mat3::identity() - f_inv_t * h.transpose()) * cofactor(f);
}

Mat3 cof_rank_one_expansion(const Mat3& h) {
  const Mat3 one = Mat3::identity();
  return one + (h.trace() * one - h.transpose()) + cofactor(h);
}

RankOnePerturbation::RankOnePerturbation(const Vec3& xi, const Vec3& eta) {
  const double nx = norm(xi);
  const double ny = norm(eta);
  if (nx == 0.0 || ny == 0.0) return;
  const double s = std::sqrt(nx * ny);
  xi_ = (s / nx) * xi;
  eta_ = (s / ny) * eta;
}

RankOnePerturbation RankOnePerturbation::scaled(double s) const {
  return {s * xi_, eta_};
}

double det_rank_one_update(const Mat3& f, const RankOnePerturbation& p) {
  return det(f) + dot(cofactor(f) * p.eta(), p.xi());
}

bool segment_in_gl_plus(const Mat3& f, const RankOnePerturbation& p) {
  return det(f) > 0.0 && det_rank_one_update(f, p) > 0.0;
}

std::optional<std::pair<Vec3, Vec3>> rank_one_factor(const Mat3& a) {
  const double n = norm(a);
  if (n == 0.0) return std::pair{Vec3::zero(), Vec3::zero()};

  // sigma_1^2 is the largest eigenvalue of A^T A. The sum of squared 2x2 minors
  // |Cof A|^2 equals sigma_1^2 sigma_2^2 + sigma_1^2 sigma_3^2 + sigma_2^2 sigma_3^2,
  // so |Cof A| / sigma_1 brackets sigma_2 within a factor sqrt(2) and, unlike
  // the small eigenvalues of A^T A, carries only O(eps |A|) roundoff.
  const double s1_sq = std::max(0.0, sym_eigenvalues(a.transpose() * a)[2]);
  if (!(norm(cofactor(a)) <= kRankOneTol * s1_sq)) return std::nullopt;

  std::size_t jmax = 0;
  for (std::size_t j = 1; j < 3; ++j)
    if (norm(a.col(j)) > norm(a.col(jmax))) jmax = j;
  const Vec3 u = a.col(jmax);
  Vec3 v = (1.0 / dot(u, u)) * (a.transpose() * u);
  if (norm(a - dyad(u, v)) > 1e-8 * n) return std::nullopt;

  const double s = std::sqrt(norm(v) / norm(u));
  Vec3 x = s * u;
  Vec3 y = (1.0 / s) * v;
  std::size_t kmax = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (std::abs(x[k]) > std::abs(x[kmax])) kmax = k;
  if (x[kmax] < 0.0) {
    x = -x;
    y = -y;
  }
  return std::pair{x, y};
}

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solve(const Mat3& m, int options) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) a(i, j) = a(j, i) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(a, options);
}

}  // namespace

std::array<double, 3> sym_eigenvalues(const Mat3& m) {
  const auto es = solve(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};
}

SymEigen sym_eigen(const Mat3& m) {
  const auto es = solve(m, Eigen::ComputeEigenvectors);
  SymEigen out;
  for (int k = 0; k < 3; ++k) {
    out.values[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    const auto v = es.eigenvectors().col(k);
    out.vectors[static_cast<std::size_t>(k)] = Vec3{v(0), v(1), v(2)};
  }
  return out;
}

Mat3 rotation_from_axis_angle(const Vec3& w) {
  const double theta = norm(w);
  if (theta == 0.0) return Mat3::identity();
  const Vec3 k = (1.0 / theta) * w;
  const Mat3 kx{0.0, -k[2], k[1], k[2], 0.0, -k[0], -k[1], k[0], 0.0};
  return Mat3::identity() + std::sin(theta) * kx + (1.0 - std::cos(theta)) * (kx * kx);
}

}  // namespace rank1lab
