#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "rank1lab/materials.hpp"
#include "rank1lab/sampling.hpp"

namespace rank1lab {

/// One property checked over a sample ensemble. For an upper-bound check
/// `value` is the largest normalized error seen and the check passes iff
/// value <= bound; for a lower-bound check `value` is the smallest observed
/// quantity and the check passes iff value > bound.
struct SuiteCheck {
  std::string name;
  std::size_t samples = 0;
  double value = 0.0;
  double bound = 0.0;
  bool lower_bound = false;
  bool passed = true;
};

struct SuiteResult {
  std::vector<SuiteCheck> checks;
  bool passed() const;
  const SuiteCheck* find(const std::string& name) const;
};

/// Tensor identities (cofactor multiplicativity and inversion, the defining
/// relation, the Cof(1 + H) expansion, D Cof vs. finite differences, the
/// rank-one determinant update and its affinity, the jump identity
/// Cof(F + xi (x) eta) eta = Cof(F) eta and the dyad algebra) over n samples.
SuiteResult identity_suite(Seed seed, std::size_t n, double spread);

/// piola vs. piola_fd for every model at n sampled F, plus the Richardson
/// ratio err(h = 1e-3) / err(h = 1e-4) (expected near 100, accepted in [50, 200]).
SuiteResult gradient_suite(const std::vector<std::shared_ptr<const MaterialModel>>& models,
                           Seed seed, std::size_t n, double spread);

/// theorem_identity_gap <= 1e-9 (stress scale) |F|^3 over n admissible
/// (model, F, p) triples, models taken round-robin.
SuiteResult theorem_identity_suite(
    const std::vector<std::shared_ptr<const MaterialModel>>& models, Seed seed, std::size_t n,
    double spread);

/// twin_check over n_twin samples with |xi (x) eta| in [0.1, 1] (verdict and
/// b_gap / |xi (x) eta| > 1e-6), and twin_det_contradiction parity over n_det
/// samples (|det F^ + det F| <= 1e-12 det F).
SuiteResult twin_suite(Seed seed, std::size_t n_twin, std::size_t n_det, double spread);

}  // namespace rank1lab
