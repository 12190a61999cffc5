#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rank1lab/materials.hpp"
#include "rank1lab/scan.hpp"
#include "rank1lab/tensor.hpp"

namespace rank1lab {

// ---------------------------------------------------------------------------
// Piola monotonicity vs. Cauchy stress jumps

/// Both sides of
///   <S1(F + xi (x) eta) - S1(F), xi (x) eta> = <sigma(F + xi (x) eta) - sigma(F), xi (x) (Cof F) eta>.
/// The identity is purely algebraic (it uses Cof(F + xi (x) eta) eta = Cof(F) eta)
/// and holds for every material law.
struct IdentitySides {
  double piola_side = 0.0;
  double cauchy_side = 0.0;
};

/// Throws DomainError unless F and F + xi (x) eta are in GL+(3).
IdentitySides theorem_identity_sides(const MaterialModel& m, const Mat3& f,
                                     const RankOnePerturbation& p);

/// |piola_side - cauchy_side|; roundoff level for every model.
double theorem_identity_gap(const MaterialModel& m, const Mat3& f, const RankOnePerturbation& p);

struct LineGap {
  double s = 0.0;
  /// |sigma(F + s xi (x) eta) - sigma(F)|, NaN when skipped.
  double gap = std::numeric_limits<double>::quiet_NaN();
  bool admissible = false;
};

/// Cauchy stress gap along the rank-one line through F. Values of s for which
/// det(F + s xi (x) eta) <= 0 are flagged inadmissible and skipped.
/// Throws DomainError if det F <= 0.
std::vector<LineGap> cauchy_gap_along_line(const MaterialModel& m, const Mat3& f,
                                           const RankOnePerturbation& p,
                                           const std::vector<double>& s_values);

// ---------------------------------------------------------------------------
// Rank-one injectivity search

/// Collision tolerance relative to the model's stress scale.
inline constexpr double kCollisionTol = 1e-8;
/// Smallest |xi (x) eta| a certificate may carry.
inline constexpr double kMinCertifiedNorm = 0.1;

struct CollisionCertificate {
  std::string model;
  Mat3 f;
  RankOnePerturbation p;
  double residual = std::numeric_limits<double>::infinity();
  double perturbation_norm = 0.0;
  bool segment_ok = false;
  std::size_t start_index = 0;

  /// residual <= tol, perturbation_norm >= kMinCertifiedNorm and segment_ok.
  bool valid(double tol) const {
    return residual <= tol && perturbation_norm >= kMinCertifiedNorm && segment_ok;
  }
};

/// Evaluates a candidate collision (F, p) for model m.
CollisionCertificate make_certificate(const MaterialModel& m, const Mat3& f,
                                      const RankOnePerturbation& p);

struct InjectivitySearchResult {
  std::string model;
  Seed seed;
  /// Best valid certificate per deformation gradient, in F order.
  std::vector<CollisionCertificate> certificates;
  double min_residual_found = std::numeric_limits<double>::infinity();
  std::optional<CollisionCertificate> best;
  std::size_t starts = 0;
  std::size_t gradients = 0;
  double tolerance = 0.0;
};

/// Multi-start Nelder-Mead minimization of |sigma(F + s xi (x) eta) - sigma(F)|^2
/// over unit xi, eta and amplitude s in [kMinCertifiedNorm, cfg.s_max], with
/// the segment kept inside GL+(3). Visits cfg.probe_F followed by
/// cfg.n_search_F sampled gradients, cfg.n_starts starts each. An empty
/// amplitude window (s_max < kMinCertifiedNorm) yields an empty result.
InjectivitySearchResult injectivity_search(const MaterialModel& m, const ScanConfig& cfg);

// ---------------------------------------------------------------------------
// Twins: rank-one connected gradients with the same left Cauchy-Green tensor

struct TwinCheck {
  double b_gap = 0.0;
  bool verdict = true;
};

/// b_gap = |F^ F^^T - F F^T| with F^ = F + xi (x) eta; verdict is the
/// implication (b_gap <= tol => |xi (x) eta| <= tol).
/// Throws DomainError unless F and F^ are in GL+(3).
TwinCheck twin_check(const Mat3& f, const RankOnePerturbation& p, double tol = 1e-6);

/// det(F + xi (x) eta) for xi = -(2 / |eta|^2) F eta, the only rank-one jump
/// with F^ F^^T = F F^T; equals -det F. Throws DomainError for eta = 0 or
/// det F <= 0.
double twin_det_contradiction(const Mat3& f, const Vec3& eta);

// ---------------------------------------------------------------------------
// Spherical stress along pure dilations

struct PressureScanRecord {
  double alpha = 0.0;
  double spherical = 0.0;
};

struct CollisionPair {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double level = 0.0;
  /// rank_one_factor(sqrt(alpha2) 1 - sqrt(alpha1) 1) succeeded.
  bool difference_rank_one = false;
};

struct PressureScan {
  std::vector<PressureScanRecord> records;
  bool is_monotone = true;
  /// Golden-section refined maximizer; on a monotone grid this is the
  /// endpoint with the larger value.
  double alpha_star = 0.0;
  double t_star = 0.0;
  bool interior_max = false;
  std::optional<CollisionPair> collision;
};

/// t(alpha) = tr sigma(alpha 1) / 3 for the Blatz-Ko response on the family
/// B = alpha 1, tabulated on a log-uniform grid of n points. The collision
/// pair solves t(alpha) = t(alpha*) / 2 by bisection on (1 + 1e-6, alpha*) and
/// (alpha*, 50). Throws DomainError for nonpositive bounds and
/// std::invalid_argument for alpha_min >= alpha_max or n < 3.
PressureScan blatzko_pressure_scan(double mu, double alpha_min, double alpha_max, std::size_t n);

/// The same analysis for any scalar profile on a log-uniform grid; no
/// collision pair is computed.
PressureScan scan_scalar_profile(const std::function<double(double)>& t, double lo, double hi,
                                 std::size_t n);

/// tr sigma(lambda 1) / 3 over lambda in [lo, hi] for an arbitrary model.
PressureScan dilation_spherical_scan(const MaterialModel& m, double lo, double hi,
                                     std::size_t n);

struct PressureCompressionEntry {
  double lambda = 0.0;
  double product = 0.0;
  bool skipped = false;
};

struct PressureCompressionResult {
  std::vector<PressureCompressionEntry> entries;
  bool verdict = true;
};

/// Points within this distance of lambda = 1 are skipped.
inline constexpr double kUnitStretchTol = 1e-6;

/// (tr sigma(lambda 1) / 3)(lambda - 1) for each lambda; verdict is true iff
/// every non-skipped product is positive. Throws DomainError for lambda <= 0.
PressureCompressionResult pressure_compression_check(const MaterialModel& m,
                                                     const std::vector<double>& lambdas);

}  // namespace rank1lab
