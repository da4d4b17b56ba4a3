#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pasp {

/// Objective to maximize over the box [0,1]^n.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::size_t dim() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  /// Writes the gradient into `grad` and returns the value.
  virtual double value_and_gradient(std::span<const double> x, std::span<double> grad) const = 0;
};

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // objective after every iteration, starting point first
};

/// Projected gradient ascent with Armijo backtracking along the projection
/// arc. Stops when the projected gradient norm drops below `tolerance`.
struct GradientAscentOptions {
  double armijo_c = 1e-4;
  double shrink = 0.5;
  double tolerance = 1e-6;
  int max_iterations = 500;
  int max_backtracks = 60;
};

OptimizeResult projected_gradient_ascent(const Objective& f, std::vector<double> x0,
                                         const GradientAscentOptions& options = {});

/// Compass search over the coordinates: try +-step on each coordinate,
/// keep strict improvements, halve the step after a sweep without one.
struct CoordinateSearchOptions {
  double initial_step = 0.25;
  double shrink = 0.5;
  double min_step = 1e-6;
  int max_sweeps = 1000;
};

OptimizeResult coordinate_search(const Objective& f, std::vector<double> x0,
                                 const CoordinateSearchOptions& options = {});

}  // namespace pasp
