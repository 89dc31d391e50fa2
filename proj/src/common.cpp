#include <cmath>
#include <sstream>

#include "cesforge/error.hpp"
#include "cesforge/grid.hpp"

namespace cesforge {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::parameter_pole: return "parameter-pole";
    case Errc::no_convergence: return "no-convergence";
    case Errc::domain: return "domain";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::ground_state_violation: return "ground-state-violation";
    case Errc::node_in_domain: return "node-in-domain";
    case Errc::unclassifiable: return "unclassifiable";
    case Errc::null_result: return "null-result";
    case Errc::confinement: return "confinement";
    case Errc::discretization: return "discretization";
  }
  return "unknown";
}

Grid::Grid(double lo, double hi, double step, Geometry geometry)
    : lo_(lo), step_(step), intervals_(0), geometry_(geometry) {
  if (!(step > 0.0) || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(Errc::invalid_argument, "grid needs finite lo < hi and step > 0");
  }
  if (geometry == Geometry::radial && !(lo > 0.0)) {
    throw Error(Errc::invalid_argument, "radial grid needs lo > 0");
  }
  const double span = (hi - lo) / step;
  intervals_ = static_cast<std::size_t>(std::floor(span + 1e-9));
  if (intervals_ < 100) {
    std::ostringstream msg;
    msg << "grid has " << intervals_ << " intervals; at least 100 required";
    throw Error(Errc::invalid_argument, msg.str());
  }
}

std::vector<double> Grid::points() const {
  std::vector<double> x(intervals_ + 1);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = point(i);
  return x;
}

Grid Grid::refined() const {
  Grid g = *this;
  g.step_ = 0.5 * step_;
  g.intervals_ = 2 * intervals_;
  return g;
}

GridFunction sample(const RealFn& f, const std::vector<double>& x) {
  GridFunction out{x, std::vector<double>(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = f(x[i]);
  return out;
}

}  // namespace cesforge
