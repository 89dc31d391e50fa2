#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace cesforge {

enum class Geometry { radial, line };

struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x > lo && x < hi; }
};

using RealFn = std::function<double(double)>;

/// Uniform grid lo, lo+step, ..., lo+n*step.
///
/// The number of intervals is floor((hi-lo)/step) with a 1e-9 slack, so a
/// non-commensurate hi is truncated to the last full step. Radial grids need
/// lo > 0; at least 100 intervals are required.
class Grid {
 public:
  Grid(double lo, double hi, double step, Geometry geometry);

  static Grid radial_default() { return {1e-3, 12.0, 2e-3, Geometry::radial}; }
  static Grid line_default() { return {-10.0, 10.0, 2e-3, Geometry::line}; }

  double lo() const { return lo_; }
  double hi() const { return lo_ + static_cast<double>(intervals_) * step_; }
  double step() const { return step_; }
  Geometry geometry() const { return geometry_; }
  std::size_t intervals() const { return intervals_; }

  double point(std::size_t i) const { return lo_ + static_cast<double>(i) * step_; }
  /// All intervals()+1 points including both ends.
  std::vector<double> points() const;
  /// Same span with the step halved.
  Grid refined() const;

 private:
  double lo_;
  double step_;
  std::size_t intervals_;
  Geometry geometry_;
};

/// Grid function: one value per grid point.
struct GridFunction {
  std::vector<double> x;
  std::vector<double> values;
};

GridFunction sample(const RealFn& f, const std::vector<double>& x);

/// Bound states; wavefunctions live on the interior points of the grid.
struct Spectrum {
  std::vector<double> energies;
  std::vector<int> node_counts;
  std::vector<std::vector<double>> wavefunctions;
  std::vector<double> x;
  double step = 0.0;
};

}  // namespace cesforge
