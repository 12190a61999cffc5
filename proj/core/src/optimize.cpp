#include "rank1lab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rank1lab {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  NelderMeadResult res;
  if (n == 0) {
    res.value = f(x0);
    res.evaluations = 1;
    return res;
  }

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opts.initial_step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);
  res.evaluations = static_cast<int>(n + 1);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    // stable: equal values keep vertex order, so runs are reproducible
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = std::move(pts[order[i]]);
      v2[i] = vals[order[i]];
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  auto affine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = c[k] + t * (w[k] - c[k]);
    return out;
  };

  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    sort_simplex();
    if (vals[0] <= opts.target) break;

    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        diameter = std::max(diameter, std::abs(pts[i][k] - pts[0][k]));
    const double fspread = std::abs(vals[n] - vals[0]);
    if (diameter <= opts.tolerance && (fspread <= opts.tolerance || !std::isfinite(fspread)))
      break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);

    const auto xr = affine(centroid, pts[n], -1.0);
    const double fr = f(xr);
    ++res.evaluations;
    if (fr < vals[0]) {
      const auto xe = affine(centroid, pts[n], -2.0);
      const double fe = f(xe);
      ++res.evaluations;
      if (fe < fr) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
      continue;
    }
    if (fr < vals[n - 1]) {
      pts[n] = xr;
      vals[n] = fr;
      continue;
    }
    // contraction: outside if the reflected point beats the worst vertex
    const bool outside = fr < vals[n];
    const auto xc = affine(centroid, outside ? xr : pts[n], 0.5);
    const double fc = f(xc);
    ++res.evaluations;
    if (fc < (outside ? fr : vals[n])) {
      pts[n] = xc;
      vals[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      pts[i] = affine(pts[0], pts[i], 0.5);
      vals[i] = f(pts[i]);
    }
    res.evaluations += static_cast<int>(n);
  }
  sort_simplex();
  res.x = pts[0];
  res.value = vals[0];
  res.iterations = it;
  return res;
}

NelderMeadResult nelder_mead_restarted(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
    NelderMeadOptions opts, int restarts) {
  NelderMeadResult best = nelder_mead(f, std::move(x0), opts);
  for (int r = 1; r < restarts && best.value > opts.target; ++r) {
    opts.initial_step *= 0.1;
    if (opts.initial_step < opts.tolerance) break;
    NelderMeadResult next = nelder_mead(f, best.x, opts);
    next.iterations += best.iterations;
    next.evaluations += best.evaluations;
    if (next.value <= best.value) {
      best = std::move(next);
    } else {
      best.iterations = next.iterations;
      best.evaluations = next.evaluations;
    }
  }
  return best;
}

}  // namespace rank1lab
