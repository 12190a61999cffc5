#include "rank1lab/materials.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "rank1lab/errors.hpp"

namespace rank1lab {

namespace {

void require_gl_plus(const Mat3& f, const char* where) {
  if (!(det(f) > 0.0)) throw DomainError(std::string(where) + ": det F <= 0");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string("material parameter ") + what + " must be positive");
}

}  // namespace

double MaterialModel::energy(const Mat3& f) const {
  require_gl_plus(f, "energy");
  return energy_unchecked(f);
}

Mat3 MaterialModel::piola(const Mat3& f) const {
  require_gl_plus(f, "piola");
  return piola_unchecked(f);
}

// --- Blatz-Ko -------------------------------------------------------------

BlatzKo::BlatzKo(double mu) : mu_(mu) { require_positive(mu, "mu"); }

double BlatzKo::energy_unchecked(const Mat3& f) const {
  return 0.5 * mu_ * (inner(f, f) + 2.0 / det(f) - 5.0);
}

Mat3 BlatzKo::piola_unchecked(const Mat3& f) const {
  const double j = det(f);
  return mu_ * (f - (1.0 / (j * j)) * cofactor(f));
}

// --- Neo-Hooke ------------------------------------------------------------

NeoHooke::NeoHooke(double mu, double lambda) : mu_(mu), lambda_(lambda) {
  require_positive(mu, "mu");
  require_positive(lambda, "lambda");
}

double NeoHooke::energy_unchecked(const Mat3& f) const {
  const double log_j = std::log(det(f));
  return 0.5 * mu_ * (inner(f, f) - 3.0) - mu_ * log_j + 0.5 * lambda_ * log_j * log_j;
}

Mat3 NeoHooke::piola_unchecked(const Mat3& f) const {
  const double j = det(f);
  const Mat3 f_inv_t = (1.0 / j) * cofactor(f);
  return mu_ * (f - f_inv_t) + (lambda_ * std::log(j)) * f_inv_t;
}

// --- Saint Venant-Kirchhoff -----------------------------------------------

SaintVenantKirchhoff::SaintVenantKirchhoff(double mu, double lambda) : mu_(mu), lambda_(lambda) {
  require_positive(mu, "mu");
  require_positive(lambda, "lambda");
}

double SaintVenantKirchhoff::energy_unchecked(const Mat3& f) const {
  const Mat3 e = 0.5 * (f.transpose() * f - Mat3::identity());
  const double tr = e.trace();
  return 0.5 * lambda_ * tr * tr + mu_ * inner(e, e);
}

Mat3 SaintVenantKirchhoff::piola_unchecked(const Mat3& f) const {
  const Mat3 e = 0.5 * (f.transpose() * f - Mat3::identity());
  const Mat3 s2 = (lambda_ * e.trace()) * Mat3::identity() + (2.0 * mu_) * e;
  return f * s2;
}

// --- volumetric cubic -----------------------------------------------------

VolumetricCubic::VolumetricCubic(double c) : c_(c) { require_positive(c, "c"); }

double VolumetricCubic::energy_unchecked(const Mat3& f) const {
  const double d = det(f) - 2.0;
  return c_ * d * d * d / 3.0;
}

Mat3 VolumetricCubic::piola_unchecked(const Mat3& f) const {
  const double d = det(f) - 2.0;
  return (c_ * d * d) * cofactor(f);
}

// --- factory --------------------------------------------------------------

std::string canonical_model_name(std::string_view name) {
  std::string s(name);
  for (auto& ch : s) ch = (ch == '_') ? '-' : static_cast<char>(std::tolower(ch));
  if (s == "blatz-ko" || s == "blatzko") return "blatz-ko";
  if (s == "neo-hooke" || s == "neohooke") return "neo-hooke";
  if (s == "svk" || s == "saint-venant-kirchhoff") return "svk";
  if (s == "volumetric-cubic") return "volumetric-cubic";
  return {};
}

std::unique_ptr<MaterialModel> make_model(std::string_view name,
                                          const std::map<std::string, double>& params) {
  const std::string canon = canonical_model_name(name);
  auto get = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : params) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
        throw std::invalid_argument("unknown parameter '" + k + "' for model " + canon);
    }
  };
  if (canon == "blatz-ko") {
    check_keys({"mu"});
    return std::make_unique<BlatzKo>(get("mu", 1.0));
  }
  if (canon == "neo-hooke") {
    check_keys({"mu", "lambda"});
    return std::make_unique<NeoHooke>(get("mu", 1.0), get("lambda", 1.0));
  }
  if (canon == "svk") {
    check_keys({"mu", "lambda"});
    return std::make_unique<SaintVenantKirchhoff>(get("mu", 1.0), get("lambda", 1.0));
  }
  if (canon == "volumetric-cubic") {
    check_keys({"c"});
    return std::make_unique<VolumetricCubic>(get("c", 1.0));
  }
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

// --- stresses -------------------------------------------------------------

double default_first_step(const Mat3& f) { return 1e-5 * (1.0 + norm(f)); }

Mat3 piola_fd(const MaterialModel& m, const Mat3& f, double h) {
  Mat3 s;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Mat3 fp = f, fm = f;
      fp(i, j) += h;
      fm(i, j) -= h;
      s(i, j) = (m.energy(fp) - m.energy(fm)) / (2.0 * h);
    }
  }
  return s;
}

Mat3 cauchy_raw(const MaterialModel& m, const Mat3& f) {
  return m.piola(f) * inverse(cofactor(f));
}

Mat3 cauchy(const MaterialModel& m, const Mat3& f) {
  const Mat3 s1 = m.piola(f);
  const Mat3 cof_inv = inverse(cofactor(f));
  const Mat3 raw = s1 * cof_inv;
  // roundoff in the product scales with |S1| |Cof(F)^-1|, not with |sigma|
  const double scale = norm(s1) * norm(cof_inv) + m.stress_scale();
  if (norm(raw - raw.transpose()) > kCauchySymmetryTol * scale)
    throw ConsistencyError("cauchy: stress of " + m.name() + " is not symmetric");
  return sym(raw);
}

Mat3 blatzko_cauchy_from_b(double mu, const Mat3& b) {
  if (norm(b - b.transpose()) > 1e-12 * norm(b))
    throw DomainError("blatzko_cauchy_from_b: B is not symmetric");
  if (!(sym_eigenvalues(b)[0] > 0.0))
    throw DomainError("blatzko_cauchy_from_b: B is not positive definite");
  const double det_b = det(b);
  return (mu / det_b) * (std::sqrt(det_b) * b - Mat3::identity());
}

}  // namespace rank1lab
