#include "rank1lab/injectivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rank1lab/convexity.hpp"
#include "rank1lab/errors.hpp"
#include "rank1lab/optimize.hpp"
#include "rank1lab/parallel.hpp"

namespace rank1lab {

namespace {

void require_gl_plus(const Mat3& f, const char* where) {
  if (!(det(f) > 0.0)) throw DomainError(std::string(where) + ": det F <= 0");
}

void require_endpoints(const Mat3& f, const RankOnePerturbation& p, const char* where) {
  require_gl_plus(f, where);
  if (!(det(f + p.matrix()) > 0.0))
    throw DomainError(std::string(where) + ": F + xi (x) eta leaves GL+(3)");
}

double golden_max(const std::function<double(double)>& t, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = t(c), fd = t(d);
  while (b - a > 1e-12 * (std::abs(a) + std::abs(b))) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = t(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = t(d);
    }
  }
  return 0.5 * (a + b);
}

// Root of t(x) = level on [lo, hi]; requires a sign change.
std::optional<double> bisect_level(const std::function<double(double)>& t, double level,
                                   double lo, double hi) {
  double glo = t(lo) - level;
  const double ghi = t(hi) - level;
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi;
       ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = t(mid) - level;
    if (g == 0.0) return mid;
    if ((g > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = g;
    } else {
      hi = mid;
    }
  }
  // pick the endpoint with the smaller residual
  return std::abs(t(lo) - level) <= std::abs(t(hi) - level) ? lo : hi;
}

// s in [lo, hi] from an unconstrained coordinate.
double amplitude_of(double u, double lo, double hi) {
  return lo + (hi - lo) * 0.5 * (1.0 - std::cos(u));
}

double coordinate_of(double s, double lo, double hi) {
  return std::acos(std::clamp(1.0 - 2.0 * (s - lo) / (hi - lo), -1.0, 1.0));
}

}  // namespace

IdentitySides theorem_identity_sides(const MaterialModel& m, const Mat3& f,
                                     const RankOnePerturbation& p) {
  require_endpoints(f, p, "theorem_identity_sides");
  const Mat3 d = p.matrix();
  const Mat3 f_hat = f + d;
  IdentitySides out;
  out.piola_side = inner(m.piola(f_hat) - m.piola(f), d);
  out.cauchy_side =
      inner(cauchy(m, f_hat) - cauchy(m, f), dyad(p.xi(), cofactor(f) * p.eta()));
  return out;
}

double theorem_identity_gap(const MaterialModel& m, const Mat3& f, const RankOnePerturbation& p) {
  const auto sides = theorem_identity_sides(m, f, p);
  return std::abs(sides.piola_side - sides.cauchy_side);
}

std::vector<LineGap> cauchy_gap_along_line(const MaterialModel& m, const Mat3& f,
                                           const RankOnePerturbation& p,
                                           const std::vector<double>& s_values) {
  require_gl_plus(f, "cauchy_gap_along_line");
  const Mat3 sigma0 = cauchy(m, f);
  const Mat3 d = p.matrix();
  std::vector<LineGap> out;
  out.reserve(s_values.size());
  for (double s : s_values) {
    LineGap g;
    g.s = s;
    const Mat3 fs = f + s * d;
    if (det(fs) > 0.0) {
      g.admissible = true;
      g.gap = norm(cauchy(m, fs) - sigma0);
    }
    out.push_back(g);
  }
  return out;
}

CollisionCertificate make_certificate(const MaterialModel& m, const Mat3& f,
                                      const RankOnePerturbation& p) {
  CollisionCertificate c;
  c.model = m.name();
  c.f = f;
  c.p = p;
  c.perturbation_norm = p.amplitude();
  c.segment_ok = segment_in_gl_plus(f, p);
  if (c.segment_ok) c.residual = norm(cauchy(m, f + p.matrix()) - cauchy(m, f));
  return c;
}

InjectivitySearchResult injectivity_search(const MaterialModel& m, const ScanConfig& cfg) {
  InjectivitySearchResult out;
  out.model = m.name();
  out.seed = cfg.seed;
  out.tolerance = kCollisionTol * m.stress_scale();
  // keep rounding in the canonical form from dropping |xi (x) eta| below the floor
  const double s_lo = kMinCertifiedNorm * (1.0 + 1e-12);
  if (!(cfg.s_max >= kMinCertifiedNorm) || cfg.n_starts == 0) return out;
  const double s_hi = std::max(cfg.s_max, s_lo);

  std::vector<Mat3> fs = cfg.probe_F;
  const Seed f_seed = derive_seed(cfg.seed, stream::kSearchF);
  for (std::size_t i = 0; i < cfg.n_search_F; ++i)
    fs.push_back(sample_gl_plus(derive_seed(f_seed, i), cfg.spread));
  for (const auto& f : fs) require_gl_plus(f, "injectivity_search");
  out.gradients = fs.size();

  const std::size_t total = fs.size() * cfg.n_starts;
  const Seed start_seed = derive_seed(cfg.seed, stream::kSearchStarts);
  // Stop once the residual is three orders below the certificate tolerance.
  const double target = 1e-6 * out.tolerance * out.tolerance;

  std::vector<CollisionCertificate> results(total);
  parallel_for(total, cfg.threads, [&](std::size_t idx) {
    const Mat3& f = fs[idx / cfg.n_starts];
    const Mat3 sigma0 = cauchy(m, f);
    auto point = [&](const std::vector<double>& x) {
      const double s = amplitude_of(x[4], s_lo, s_hi);
      return RankOnePerturbation(s * unit_from_angles(x[0], x[1]), unit_from_angles(x[2], x[3]));
    };
    auto objective = [&](const std::vector<double>& x) {
      const RankOnePerturbation p = point(x);
      if (!segment_in_gl_plus(f, p)) return std::numeric_limits<double>::infinity();
      const Mat3 diff = cauchy(m, f + p.matrix()) - sigma0;
      return inner(diff, diff);
    };

    Rng rng = make_rng(derive_seed(start_seed, idx));
    std::vector<double> x0(5);
    // draw until the start is admissible; the s -> s_lo end is almost always so
    for (int attempt = 0; attempt < 100; ++attempt) {
      constexpr double pi = std::numbers::pi;
      x0 = {std::acos(sample_uniform(rng, -1.0, 1.0)), sample_uniform(rng, -pi, pi),
            std::acos(sample_uniform(rng, -1.0, 1.0)), sample_uniform(rng, -pi, pi),
            coordinate_of(sample_uniform(rng, s_lo, s_hi), s_lo, s_hi)};
      if (std::isfinite(objective(x0))) break;
      x0[4] = 0.0;
      if (std::isfinite(objective(x0))) break;
    }

    NelderMeadOptions opts;
    opts.max_iterations = cfg.search_iterations;
    opts.tolerance = 1e-14;
    opts.initial_step = 0.3;
    opts.target = target;
    const auto res = nelder_mead_restarted(objective, x0, opts, cfg.search_restarts);

    auto cert = make_certificate(m, f, point(res.x));
    cert.start_index = idx;
    results[idx] = cert;
  });

  out.starts = total;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const CollisionCertificate* best_valid = nullptr;
    for (std::size_t j = 0; j < cfg.n_starts; ++j) {
      const auto& c = results[i * cfg.n_starts + j];
      if (!c.segment_ok) continue;
      if (c.residual < out.min_residual_found) {
        out.min_residual_found = c.residual;
        out.best = c;
      }
      if (c.valid(out.tolerance) && (!best_valid || c.residual < best_valid->residual))
        best_valid = &c;
    }
    if (best_valid) out.certificates.push_back(*best_valid);
  }
  return out;
}

TwinCheck twin_check(const Mat3& f, const RankOnePerturbation& p, double tol) {
  require_endpoints(f, p, "twin_check");
  const Mat3 f_hat = f + p.matrix();
  TwinCheck out;
  out.b_gap = norm(f_hat * f_hat.transpose() - f * f.transpose());
  out.verdict = !(out.b_gap <= tol) || p.amplitude() <= tol;
  return out;
}

double twin_det_contradiction(const Mat3& f, const Vec3& eta) {
  require_gl_plus(f, "twin_det_contradiction");
  const double eta_sq = dot(eta, eta);
  if (eta_sq == 0.0) throw DomainError("twin_det_contradiction: eta = 0");
  const Vec3 xi = (-2.0 / eta_sq) * (f * eta);
  return det(f + dyad(xi, eta));
}

PressureScan scan_scalar_profile(const std::function<double(double)>& t, double lo, double hi,
                                 std::size_t n) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw DomainError("scan: bounds must be positive");
  if (!(lo < hi)) throw std::invalid_argument("scan: lower bound must be below upper bound");
  if (n < 3) throw std::invalid_argument("scan: need at least 3 grid points");

  PressureScan out;
  out.records.resize(n);
  const double ratio = std::log(hi / lo);
  for (std::size_t k = 0; k < n; ++k) {
    const double a =
        (k + 1 == n) ? hi : lo * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n - 1));
    out.records[k] = {a, t(a)};
  }

  bool increasing = true, decreasing = true;
  std::size_t kmax = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const double d = out.records[k].spherical - out.records[k - 1].spherical;
    if (d < 0.0) increasing = false;
    if (d > 0.0) decreasing = false;
    if (out.records[k].spherical > out.records[kmax].spherical) kmax = k;
  }
  out.is_monotone = increasing || decreasing;
  out.interior_max = kmax > 0 && kmax + 1 < n;
  if (out.interior_max) {
    out.alpha_star = golden_max(t, out.records[kmax - 1].alpha, out.records[kmax + 1].alpha);
    out.t_star = t(out.alpha_star);
  } else {
    out.alpha_star = out.records[kmax].alpha;
    out.t_star = out.records[kmax].spherical;
  }
  return out;
}

PressureScan blatzko_pressure_scan(double mu, double alpha_min, double alpha_max, std::size_t n) {
  const auto t = [mu](double alpha) {
    return spherical_stress(blatzko_cauchy_from_b(mu, alpha * Mat3::identity()));
  };
  PressureScan out = scan_scalar_profile(t, alpha_min, alpha_max, n);
  if (!out.interior_max) return out;

  constexpr double kLeft = 1.0 + 1e-6;
  constexpr double kRight = 50.0;
  const double level = 0.5 * out.t_star;
  if (!(out.alpha_star > kLeft && out.alpha_star < kRight)) return out;
  const auto a1 = bisect_level(t, level, kLeft, out.alpha_star);
  const auto a2 = bisect_level(t, level, out.alpha_star, kRight);
  if (!a1 || !a2) return out;

  CollisionPair pair{*a1, *a2, t(*a1), t(*a2), level, false};
  const double diff = std::sqrt(pair.alpha2) - std::sqrt(pair.alpha1);
  pair.difference_rank_one = rank_one_factor(diff * Mat3::identity()).has_value();
  out.collision = pair;
  return out;
}

PressureScan dilation_spherical_scan(const MaterialModel& m, double lo, double hi,
                                     std::size_t n) {
  const auto t = [&m](double lambda) {
    return spherical_stress(cauchy(m, lambda * Mat3::identity()));
  };
  return scan_scalar_profile(t, lo, hi, n);
}

PressureCompressionResult pressure_compression_check(const MaterialModel& m,
                                                     const std::vector<double>& lambdas) {
  PressureCompressionResult out;
  for (double l : lambdas)
    if (!(l > 0.0)) throw DomainError("pressure_compression_check: lambda must be positive");
  for (double l : lambdas) {
    PressureCompressionEntry e;
    e.lambda = l;
    if (std::abs(l - 1.0) <= kUnitStretchTol) {
      e.skipped = true;
    } else {
      e.product = spherical_stress(cauchy(m, l * Mat3::identity())) * (l - 1.0);
      if (!(e.product > 0.0)) out.verdict = false;
    }
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace rank1lab
