#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "rank1lab/tensor.hpp"

namespace rank1lab {

/// Hyperelastic stored-energy law W(F) with analytic first Piola-Kirchhoff
/// stress S1 = DW(F). All evaluations are const and thread-safe.
///
/// The public entry points reject det F <= 0 with DomainError; derived classes
/// implement the unchecked kernels.
class MaterialModel {
 public:
  virtual ~MaterialModel() = default;

  virtual std::string name() const = 0;
  virtual std::map<std::string, double> parameters() const = 0;
  /// Characteristic stress (mu, or c for the volumetric demo).
  virtual double stress_scale() const = 0;
  virtual bool is_isotropic() const = 0;
  /// Whether the law is expected to be strictly rank-one convex on the
  /// sampled region. Used to judge scan findings.
  virtual bool declared_rank_one_convex() const = 0;

  double energy(const Mat3& f) const;
  Mat3 piola(const Mat3& f) const;

 protected:
  virtual double energy_unchecked(const Mat3& f) const = 0;
  virtual Mat3 piola_unchecked(const Mat3& f) const = 0;
};

/// W = mu/2 (|F|^2 + 2/det F - 5).
class BlatzKo final : public MaterialModel {
 public:
  explicit BlatzKo(double mu = 1.0);

  std::string name() const override { return "blatz-ko"; }
  std::map<std::string, double> parameters() const override { return {{"mu", mu_}}; }
  double stress_scale() const override { return mu_; }
  bool is_isotropic() const override { return true; }
  bool declared_rank_one_convex() const override { return true; }
  double mu() const { return mu_; }

 protected:
  double energy_unchecked(const Mat3& f) const override;
  Mat3 piola_unchecked(const Mat3& f) const override;

 private:
  double mu_;
};

/// W = mu/2 (|F|^2 - 3) - mu ln J + lambda/2 (ln J)^2,
/// S1 = mu (F - F^-T) + lambda ln J F^-T.
class NeoHooke final : public MaterialModel {
 public:
  NeoHooke(double mu = 1.0, double lambda = 1.0);

  std::string name() const override { return "neo-hooke"; }
  std::map<std::string, double> parameters() const override {
    return {{"mu", mu_}, {"lambda", lambda_}};
  }
  double stress_scale() const override { return mu_; }
  bool is_isotropic() const override { return true; }
  bool declared_rank_one_convex() const override { return true; }

 protected:
  double energy_unchecked(const Mat3& f) const override;
  Mat3 piola_unchecked(const Mat3& f) const override;

 private:
  double mu_;
  double lambda_;
};

/// W = lambda/2 tr(E)^2 + mu |E|^2 with E = (F^T F - 1)/2. Loses rank-one
/// convexity under compression.
class SaintVenantKirchhoff final : public MaterialModel {
 public:
  SaintVenantKirchhoff(double mu = 1.0, double lambda = 1.0);

  std::string name() const override { return "svk"; }
  std::map<std::string, double> parameters() const override {
    return {{"mu", mu_}, {"lambda", lambda_}};
  }
  double stress_scale() const override { return mu_; }
  bool is_isotropic() const override { return true; }
  bool declared_rank_one_convex() const override { return false; }

 protected:
  double energy_unchecked(const Mat3& f) const override;
  Mat3 piola_unchecked(const Mat3& f) const override;

 private:
  double mu_;
  double lambda_;
};

/// W = c (det F - 2)^3 / 3, so sigma = c (det F - 2)^2 1. F = 1 and
/// F = 1 + 2 e1 (x) e1 (det 1 and 3) carry the same Cauchy stress.
/// Not stress free at the identity.
class VolumetricCubic final : public MaterialModel {
 public:
  explicit VolumetricCubic(double c = 1.0);

  std::string name() const override { return "volumetric-cubic"; }
  std::map<std::string, double> parameters() const override { return {{"c", c_}}; }
  double stress_scale() const override { return c_; }
  bool is_isotropic() const override { return true; }
  bool declared_rank_one_convex() const override { return false; }

 protected:
  double energy_unchecked(const Mat3& f) const override;
  Mat3 piola_unchecked(const Mat3& f) const override;

 private:
  double c_;
};

/// Builds a model by name ("blatz-ko", "neo-hooke", "svk" or
/// "saint-venant-kirchhoff", "volumetric-cubic"; '_' and '-' are
/// interchangeable). Missing parameters take their defaults; unknown names or
/// parameters throw std::invalid_argument.
std::unique_ptr<MaterialModel> make_model(std::string_view name,
                                          const std::map<std::string, double>& params = {});

/// Canonical name for a user-supplied model name, or empty if unknown.
std::string canonical_model_name(std::string_view name);

/// Central differences (W(F + h E_ij) - W(F - h E_ij)) / 2h per component.
Mat3 piola_fd(const MaterialModel& m, const Mat3& f, double h);

/// Step used for first-derivative FD checks: 1e-5 (1 + |F|).
double default_first_step(const Mat3& f);

/// Relative asymmetry allowed before cauchy() refuses to symmetrize.
inline constexpr double kCauchySymmetryTol = 1e-10;

/// sigma = S1 (Cof F)^-1, checked for symmetry and returned symmetrized.
/// Throws DomainError for det F <= 0, ConsistencyError if the raw result is
/// asymmetric beyond kCauchySymmetryTol (|S1| |(Cof F)^-1| + stress scale).
Mat3 cauchy(const MaterialModel& m, const Mat3& f);

/// S1 (Cof F)^-1 without the symmetry check or symmetrization.
Mat3 cauchy_raw(const MaterialModel& m, const Mat3& f);

/// Isotropic Blatz-Ko response in terms of B = F F^T:
/// sigma(B) = mu / det B (sqrt(det B) B - 1). Throws DomainError unless B is
/// symmetric positive definite.
Mat3 blatzko_cauchy_from_b(double mu, const Mat3& b);

/// tr(sigma) / 3.
constexpr double spherical_stress(const Mat3& sigma) { return sigma.trace() / 3.0; }

}  // namespace rank1lab
