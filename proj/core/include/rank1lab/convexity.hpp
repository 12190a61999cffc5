#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rank1lab/materials.hpp"
#include "rank1lab/scan.hpp"
#include "rank1lab/tensor.hpp"

namespace rank1lab {

/// <S1(F + xi (x) eta) - S1(F), xi (x) eta>. Strict rank-one convexity
/// requires this to be positive for every nonzero dyad.
/// Throws DomainError unless the segment [F, F + xi (x) eta] lies in GL+(3).
double monotonicity_gap(const MaterialModel& m, const Mat3& f, const RankOnePerturbation& p);

/// Step used for second differences: 1e-4 (1 + |F|).
double default_second_step(const Mat3& f);

/// Roundoff level of a second difference of W at F with step h.
double second_difference_noise(const MaterialModel& m, const Mat3& f, double h);

/// D^2 W(F)(xi (x) eta, xi (x) eta) by the central second difference
/// (W(F + hD) - 2 W(F) + W(F - hD)) / h^2. xi and eta must be unit vectors.
double rank_one_second_derivative(const MaterialModel& m, const Mat3& f, const Vec3& xi,
                                  const Vec3& eta, double h);

struct SegmentProbe {
  Mat3 f;
  RankOnePerturbation p;
  double theta = 0.5;
};

/// theta W(F) + (1 - theta) W(F + xi (x) eta) - W(F + (1 - theta) xi (x) eta);
/// positive for strictly rank-one convex W when 0 < theta < 1 and p != 0.
double convexity_on_segment(const MaterialModel& m, const SegmentProbe& probe);

/// Acoustic tensor Q(eta) with <Q(eta) xi, xi> = D^2 W(F)(xi (x) eta, xi (x) eta),
/// assembled column by column from central differences of S1 along e_k (x) eta
/// and returned symmetrized. Throws ConsistencyError if the raw assembly is
/// asymmetric beyond 1e-6 (stress scale + |Q|).
Mat3 acoustic_tensor(const MaterialModel& m, const Mat3& f, const Vec3& eta, double h);

struct DirectionalSample {
  Mat3 f;
  Vec3 xi;
  Vec3 eta;
  double value = 0.0;
  /// -10x the second-difference noise level at this sample.
  double threshold = 0.0;
};

struct EllipticityReport {
  std::string model;
  Seed seed;
  std::size_t samples_tested = 0;
  std::size_t indeterminate = 0;
  std::size_t refined = 0;
  double min_second_derivative = std::numeric_limits<double>::infinity();
  std::optional<DirectionalSample> argmin;
  std::vector<DirectionalSample> violations;
};

/// Samples probe_F plus n_F random F, n_dir unit (xi, eta) pairs per F, and
/// refines the n_refine lowest candidates by Nelder-Mead over spherical angles
/// with F held fixed. A value counts as a violation when it is below -10x the
/// second-difference noise level; negative values inside the noise band are
/// counted as indeterminate.
EllipticityReport ellipticity_scan(const MaterialModel& m, const ScanConfig& cfg);

/// Principal stretches and principal Cauchy stresses are co-monotone:
/// (t_i - t_j)(lambda_i - lambda_j) > 0 whenever lambda_i and lambda_j differ
/// by more than a relative 1e-8. Throws NotIsotropicError for anisotropic
/// models and DomainError for det F <= 0.
bool baker_ericksen_check(const MaterialModel& m, const Mat3& f);

/// Unit vector from spherical angles (polar, azimuth).
Vec3 unit_from_angles(double polar, double azimuth);

}  // namespace rank1lab
