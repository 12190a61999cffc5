#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

namespace rank1lab {

class Vec3 {
 public:
  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : c_{x, y, z} {}

  static constexpr Vec3 zero() { return {}; }
  /// Canonical basis vector e_i, i in {0,1,2}.
  static constexpr Vec3 unit(std::size_t i) {
    Vec3 e;
    e.c_[i] = 1.0;
    return e;
  }

  constexpr double operator[](std::size_t i) const { return c_[i]; }
  constexpr double& operator[](std::size_t i) { return c_[i]; }

  constexpr Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  bool is_finite() const {
    return std::isfinite(c_[0]) && std::isfinite(c_[1]) && std::isfinite(c_[2]);
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

 private:
  std::array<double, 3> c_{};
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(Vec3 a) { return a *= -1.0; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Dense 3x3 matrix, row-major. Entry (i, j) is row i, column j.
class Mat3 {
 public:
  constexpr Mat3() = default;
  constexpr Mat3(double a00, double a01, double a02, double a10, double a11, double a12,
                 double a20, double a21, double a22)
      : a_{a00, a01, a02, a10, a11, a12, a20, a21, a22} {}

  static constexpr Mat3 zero() { return {}; }
  static constexpr Mat3 identity() { return diag(1.0, 1.0, 1.0); }
  static constexpr Mat3 diag(double d0, double d1, double d2) {
    return {d0, 0.0, 0.0, 0.0, d1, 0.0, 0.0, 0.0, d2};
  }
  static constexpr Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    return {r0[0], r0[1], r0[2], r1[0], r1[1], r1[2], r2[0], r2[1], r2[2]};
  }
  static constexpr Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return {c0[0], c1[0], c2[0], c0[1], c1[1], c2[1], c0[2], c1[2], c2[2]};
  }
  /// Row-major flat constructor (9 entries).
  static constexpr Mat3 from_flat(const std::array<double, 9>& a) {
    Mat3 m;
    m.a_ = a;
    return m;
  }

  constexpr double operator()(std::size_t i, std::size_t j) const { return a_[3 * i + j]; }
  constexpr double& operator()(std::size_t i, std::size_t j) { return a_[3 * i + j]; }

  constexpr const std::array<double, 9>& flat() const { return a_; }

  constexpr Vec3 row(std::size_t i) const { return {a_[3 * i], a_[3 * i + 1], a_[3 * i + 2]}; }
  constexpr Vec3 col(std::size_t j) const { return {a_[j], a_[3 + j], a_[6 + j]}; }

  constexpr Mat3 transpose() const {
    return {a_[0], a_[3], a_[6], a_[1], a_[4], a_[7], a_[2], a_[5], a_[8]};
  }
  constexpr double trace() const { return a_[0] + a_[4] + a_[8]; }

  constexpr Mat3& operator+=(const Mat3& o) {
    for (std::size_t k = 0; k < 9; ++k) a_[k] += o.a_[k];
    return *this;
  }
  constexpr Mat3& operator-=(const Mat3& o) {
    for (std::size_t k = 0; k < 9; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  constexpr Mat3& operator*=(double s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  bool is_finite() const {
    for (double x : a_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;

 private:
  std::array<double, 9> a_{};
};

constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
constexpr Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
constexpr Mat3 operator-(Mat3 a) { return a *= -1.0; }
constexpr Mat3 operator*(double s, Mat3 a) { return a *= s; }
constexpr Mat3 operator*(Mat3 a, double s) { return a *= s; }

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return c;
}

constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
          a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
          a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

/// Frobenius inner product <A, B> = tr(A^T B).
constexpr double inner(const Mat3& a, const Mat3& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) s += a.flat()[k] * b.flat()[k];
  return s;
}
inline double norm(const Mat3& a) { return std::sqrt(inner(a, a)); }

constexpr Mat3 sym(const Mat3& a) { return 0.5 * (a + a.transpose()); }

/// Determinant by cofactor expansion along the first row.
double det(const Mat3& a);

/// Matrix of signed 2x2 minors; satisfies A (Cof A)^T = det(A) 1 for every A,
/// singular or not.
Mat3 cofactor(const Mat3& a);

/// Threshold used by inverse(): |det A| <= kSingularTol * max(1, |A|^3) is singular.
inline constexpr double kSingularTol = 1e-12;

/// Throws SingularError when A is numerically singular (see kSingularTol).
Mat3 inverse(const Mat3& a);

/// Dyadic product a (x) b, entry (i, j) = a_i b_j.
constexpr Mat3 dyad(const Vec3& a, const Vec3& b) {
  return {a[0] * b[0], a[0] * b[1], a[0] * b[2], a[1] * b[0], a[1] * b[1],
          a[1] * b[2], a[2] * b[0], a[2] * b[1], a[2] * b[2]};
}

/// (a (x) b)(c (x) d) = <b, c> a (x) d.
constexpr Mat3 dyad_compose(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return dot(b, c) * dyad(a, d);
}

/// Closed-form D Cof(F).H = (<F^-T, H> 1 - F^-T H^T) Cof F.
/// Throws SingularError if F is not invertible.
Mat3 cof_directional_derivative(const Mat3& f, const Mat3& h);

/// Cof(1 + H) = 1 + (<1, H> 1 - H^T) + Cof(H); exact polynomial identity.
Mat3 cof_rank_one_expansion(const Mat3& h);

/// A rank-one matrix xi (x) eta held in canonical form |xi| = |eta|.
/// The dyad is the invariant object; (c xi, eta / c) describes the same
/// perturbation and canonicalizes to the same pair up to a common sign flip.
class RankOnePerturbation {
 public:
  RankOnePerturbation() = default;
  RankOnePerturbation(const Vec3& xi, const Vec3& eta);

  static RankOnePerturbation zero() { return {}; }

  const Vec3& xi() const { return xi_; }
  const Vec3& eta() const { return eta_; }
  Mat3 matrix() const { return dyad(xi_, eta_); }
  /// |xi (x) eta| = |xi| |eta|.
  double amplitude() const { return dot(xi_, xi_); }
  bool is_zero() const { return xi_ == Vec3::zero(); }

  RankOnePerturbation scaled(double s) const;

 private:
  Vec3 xi_{};
  Vec3 eta_{};
};

/// det(F + xi (x) eta) = det F + <Cof(F) eta, xi>. Valid for singular F.
double det_rank_one_update(const Mat3& f, const RankOnePerturbation& p);

/// True iff det(F + t xi (x) eta) > 0 for every t in [0, 1]. The determinant is
/// affine in t, so the endpoints decide.
bool segment_in_gl_plus(const Mat3& f, const RankOnePerturbation& p);

/// Relative threshold for numerical rank one: sigma_2 <= kRankOneTol * sigma_1.
inline constexpr double kRankOneTol = 1e-10;

/// Factor A = a (x) b with |a| = |b| when A has numerical rank <= 1.
/// Returns the zero pair for A = 0 and nullopt for rank >= 2.
std::optional<std::pair<Vec3, Vec3>> rank_one_factor(const Mat3& a);

/// Eigen-decomposition of a symmetric 3x3 matrix.
struct SymEigen {
  std::array<double, 3> values;  // ascending
  std::array<Vec3, 3> vectors;   // orthonormal, vectors[k] belongs to values[k]
};

/// Eigenvalues of a symmetric matrix, ascending. Only the upper triangle is read.
std::array<double, 3> sym_eigenvalues(const Mat3& a);

/// Eigenvalues plus an orthonormal eigenbasis (QR iteration, accurate also for
/// repeated eigenvalues).
SymEigen sym_eigen(const Mat3& a);

/// Rotation exp(skew(w)) by Rodrigues' formula.
Mat3 rotation_from_axis_angle(const Vec3& w);

}  // namespace rank1lab
