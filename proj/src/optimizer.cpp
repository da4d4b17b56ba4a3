#include "pasp/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace pasp {
namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

OptimizeResult projected_gradient_ascent(const Objective& f, std::vector<double> x0,
                                         const GradientAscentOptions& opt) {
  const std::size_t n = f.dim();
  OptimizeResult r;
  r.x = std::move(x0);
  for (double& v : r.x) v = clamp01(v);
  std::vector<double> g(n), trial(n), trial_g(n);
  r.value = f.value_and_gradient(r.x, g);
  r.trace.push_back(r.value);

  double alpha = 1.0;
  while (true) {
    double pg_norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = clamp01(r.x[i] + g[i]) - r.x[i];
      pg_norm2 += d * d;
    }
    if (std::sqrt(pg_norm2) < opt.tolerance) {
      r.converged = true;
      break;
    }
    if (r.iterations >= opt.max_iterations) break;

    bool accepted = false;
    double trial_value = 0.0;
    alpha = std::min(alpha * 2.0, 1e12);
    for (int k = 0; k < opt.max_backtracks; ++k, alpha *= opt.shrink) {
      double slope = 0.0;
      bool moved = false;
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = clamp01(r.x[i] + alpha * g[i]);
        slope += g[i] * (trial[i] - r.x[i]);
        moved |= trial[i] != r.x[i];
      }
      if (!moved) continue;
      trial_value = f.value(trial);
      if (trial_value >= r.value + opt.armijo_c * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    r.x.swap(trial);
    r.value = f.value_and_gradient(r.x, g);
    r.trace.push_back(r.value);
    ++r.iterations;
  }
  return r;
}

OptimizeResult coordinate_search(const Objective& f, std::vector<double> x0,
                                 const CoordinateSearchOptions& opt) {
  OptimizeResult r;
  r.x = std::move(x0);
  for (double& v : r.x) v = clamp01(v);
  r.value = f.value(r.x);
  r.trace.push_back(r.value);

  double step = opt.initial_step;
  while (step >= opt.min_step && r.iterations < opt.max_sweeps) {
    bool improved = false;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double old = r.x[i];
      for (double dir : {1.0, -1.0}) {
        const double cand = clamp01(old + dir * step);
        if (cand == old) continue;
        r.x[i] = cand;
        const double v = f.value(r.x);
        if (v > r.value) {
          r.value = v;
          improved = true;
          break;
        }
        r.x[i] = old;
      }
    }
    if (!improved) step *= opt.shrink;
    ++r.iterations;
    r.trace.push_back(r.value);
  }
  r.converged = step < opt.min_step;
  return r;
}

}  // namespace pasp
