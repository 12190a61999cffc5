#include "rank1lab/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rank1lab/errors.hpp"
#include "rank1lab/optimize.hpp"
#include "rank1lab/parallel.hpp"

namespace rank1lab {

namespace {

void require_segment(const Mat3& f, const RankOnePerturbation& p, const char* where) {
  if (!segment_in_gl_plus(f, p))
    throw DomainError(std::string(where) + ": segment leaves GL+(3)");
}

void require_unit(const Vec3& v, const char* what) {
  if (std::abs(norm(v) - 1.0) > 1e-8)
    throw std::invalid_argument(std::string("rank_one_second_derivative: ") + what +
                                " must be a unit vector");
}

std::pair<double, double> angles_of(const Vec3& u) {
  return {std::acos(std::clamp(u[2], -1.0, 1.0)), std::atan2(u[1], u[0])};
}

DirectionalSample evaluate(const MaterialModel& m, const Mat3& f, const Vec3& xi,
                           const Vec3& eta) {
  const double h = default_second_step(f);
  DirectionalSample s{f, xi, eta, 0.0, 0.0};
  s.value = rank_one_second_derivative(m, f, xi, eta, h);
  s.threshold = -10.0 * second_difference_noise(m, f, h);
  return s;
}

}  // namespace

Vec3 unit_from_angles(double polar, double azimuth) {
  const double sp = std::sin(polar);
  return {sp * std::cos(azimuth), sp * std::sin(azimuth), std::cos(polar)};
}

double monotonicity_gap(const MaterialModel& m, const Mat3& f, const RankOnePerturbation& p) {
  require_segment(f, p, "monotonicity_gap");
  const Mat3 d = p.matrix();
  return inner(m.piola(f + d) - m.piola(f), d);
}

double default_second_step(const Mat3& f) { return 1e-4 * (1.0 + norm(f)); }

double second_difference_noise(const MaterialModel& m, const Mat3& f, double h) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double level = std::abs(m.energy(f)) + m.stress_scale() * (1.0 + inner(f, f));
  return 4.0 * eps * level / (h * h);
}

double rank_one_second_derivative(const MaterialModel& m, const Mat3& f, const Vec3& xi,
                                  const Vec3& eta, double h) {
  require_unit(xi, "xi");
  require_unit(eta, "eta");
  const Mat3 d = h * dyad(xi, eta);
  return (m.energy(f + d) - 2.0 * m.energy(f) + m.energy(f - d)) / (h * h);
}

double convexity_on_segment(const MaterialModel& m, const SegmentProbe& probe) {
  if (!(probe.theta >= 0.0 && probe.theta <= 1.0))
    throw std::invalid_argument("convexity_on_segment: theta must lie in [0, 1]");
  require_segment(probe.f, probe.p, "convexity_on_segment");
  const double t = probe.theta;
  const Mat3 d = probe.p.matrix();
  return t * m.energy(probe.f) + (1.0 - t) * m.energy(probe.f + d) -
         m.energy(probe.f + (1.0 - t) * d);
}

Mat3 acoustic_tensor(const MaterialModel& m, const Mat3& f, const Vec3& eta, double h) {
  Mat3 q;
  for (std::size_t k = 0; k < 3; ++k) {
    const Mat3 d = h * dyad(Vec3::unit(k), eta);
    const Mat3 ds = (1.0 / (2.0 * h)) * (m.piola(f + d) - m.piola(f - d));
    const Vec3 column = ds * eta;
    for (std::size_t i = 0; i < 3; ++i) q(i, k) = column[i];
  }
  if (norm(q - q.transpose()) > 1e-6 * (m.stress_scale() + norm(q)))
    throw ConsistencyError("acoustic_tensor: assembled tensor is not symmetric");
  return sym(q);
}

EllipticityReport ellipticity_scan(const MaterialModel& m, const ScanConfig& cfg) {
  EllipticityReport rep;
  rep.model = m.name();
  rep.seed = cfg.seed;

  std::vector<Mat3> fs = cfg.probe_F;
  const Seed f_seed = derive_seed(cfg.seed, stream::kScanF);
  for (std::size_t i = 0; i < cfg.n_F; ++i)
    fs.push_back(sample_gl_plus(derive_seed(f_seed, i), cfg.spread));
  if (cfg.n_dir == 0) fs.clear();

  const Seed dir_seed = derive_seed(cfg.seed, stream::kScanDirections);
  std::vector<std::vector<DirectionalSample>> per_f(fs.size());
  parallel_for(fs.size(), cfg.threads, [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(dir_seed, i));
    auto& out = per_f[i];
    out.reserve(cfg.n_dir);
    for (std::size_t j = 0; j < cfg.n_dir; ++j) {
      const Vec3 xi = sample_unit_vec(rng);
      const Vec3 eta = sample_unit_vec(rng);
      out.push_back(evaluate(m, fs[i], xi, eta));
    }
  });

  struct Ranked {
    double value;
    std::size_t index;
    const DirectionalSample* sample;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(fs.size() * cfg.n_dir);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < per_f[i].size(); ++j) {
      const auto& s = per_f[i][j];
      ++rep.samples_tested;
      if (s.value < rep.min_second_derivative) {
        rep.min_second_derivative = s.value;
        rep.argmin = s;
      }
      if (s.value < s.threshold)
        rep.violations.push_back(s);
      else if (s.value < 0.0)
        ++rep.indeterminate;
      ranked.push_back({s.value, i * cfg.n_dir + j, &s});
    }
  }

  const std::size_t k = std::min(cfg.n_refine, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(),
                    [](const Ranked& a, const Ranked& b) {
                      return a.value < b.value || (a.value == b.value && a.index < b.index);
                    });

  std::vector<std::optional<DirectionalSample>> refined(k);
  parallel_for(k, cfg.threads, [&](std::size_t r) {
    const DirectionalSample& start = *ranked[r].sample;
    const Mat3& f = start.f;
    auto objective = [&](const std::vector<double>& x) {
      try {
        return rank_one_second_derivative(m, f, unit_from_angles(x[0], x[1]),
                                          unit_from_angles(x[2], x[3]), default_second_step(f));
      } catch (const DomainError&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    const auto [p0, a0] = angles_of(start.xi);
    const auto [p1, a1] = angles_of(start.eta);
    NelderMeadOptions opts;
    opts.max_iterations = cfg.refine_iterations;
    opts.tolerance = cfg.refine_tolerance;
    opts.initial_step = 0.1;
    const auto res = nelder_mead(objective, {p0, a0, p1, a1}, opts);
    if (!std::isfinite(res.value)) return;
    refined[r] = evaluate(m, f, unit_from_angles(res.x[0], res.x[1]),
                          unit_from_angles(res.x[2], res.x[3]));
  });

  for (const auto& s : refined) {
    if (!s) continue;
    ++rep.refined;
    if (s->value < rep.min_second_derivative) {
      rep.min_second_derivative = s->value;
      rep.argmin = *s;
    }
    if (s->value < s->threshold) rep.violations.push_back(*s);
  }
  return rep;
}

bool baker_ericksen_check(const MaterialModel& m, const Mat3& f) {
  if (!m.is_isotropic())
    throw NotIsotropicError("baker_ericksen_check: " + m.name() + " is not isotropic");
  const Mat3 sigma = cauchy(m, f);
  const SymEigen eb = sym_eigen(f * f.transpose());
  std::array<double, 3> stretch{}, stress{};
  for (std::size_t k = 0; k < 3; ++k) {
    stretch[k] = std::sqrt(std::max(0.0, eb.values[k]));
    stress[k] = dot(eb.vectors[k], sigma * eb.vectors[k]);
  }
  const double stretch_tol = 1e-8 * stretch[2];
  const double stress_tol = 1e-10 * (norm(sigma) + m.stress_scale());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double dl = stretch[i] - stretch[j];
      if (std::abs(dl) <= stretch_tol) continue;
      const double dt = stress[i] - stress[j];
      // equal principal stresses make the pair vacuous
      if (std::abs(dt) <= stress_tol) continue;
      if (!(dt * dl > 0.0)) return false;
    }
  }
  return true;
}

}  // namespace rank1lab
