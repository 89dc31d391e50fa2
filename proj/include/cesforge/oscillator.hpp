#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cesforge/grid.hpp"

namespace cesforge {

/// Reference problem H = -1/2 d^2/dr^2 + V in units hbar = m = omega = 1.
struct OscillatorParams {
  double gamma = 0.0;
  Geometry geometry = Geometry::radial;

  static OscillatorParams radial(double gamma);
  static OscillatorParams line() { return {0.0, Geometry::line}; }
  /// Throws unless gamma > 0 for radial geometry.
  void validate() const;
};

/// p r^2/(1+g r^2)^2 + q/(1+g r^2)
struct RationalTerm {
  double p;
  double q;
  double g;
};

/// -d^2/dr^2 ln F(-N, b; C r^2)
struct LogPolynomialTerm {
  int n;
  double b;
  double c;
};

/// Closed-form potential kept as a term list:
///   quad r^2 + centrifugal/(2 r^2) + constant + rational terms + log term.
class PotentialModel {
 public:
  PotentialModel(Geometry geometry, double quad, double centrifugal, double constant,
                 std::vector<RationalTerm> rational_terms = {},
                 std::optional<LogPolynomialTerm> log_term = std::nullopt,
                 std::optional<Interval> domain = std::nullopt);

  Geometry geometry() const { return geometry_; }
  double quad() const { return quad_; }
  double centrifugal() const { return centrifugal_; }
  double constant() const { return constant_; }
  const std::vector<RationalTerm>& rational_terms() const { return rational_; }
  const std::optional<LogPolynomialTerm>& log_term() const { return log_term_; }
  const Interval& domain() const { return domain_; }

  double operator()(double r) const;
  /// Human-readable closed form, e.g. "0.5 r^2 + 6/(2 r^2) + 1.5 + ...".
  std::string describe() const;

 private:
  Geometry geometry_;
  double quad_;
  double centrifugal_;
  double constant_;
  std::vector<RationalTerm> rational_;
  std::optional<LogPolynomialTerm> log_term_;
  std::vector<double> log_coefficients_;  // coefficients of F(-N,b;C u) in u
  Interval domain_;
};

PotentialModel base_potential(const OscillatorParams& params);

/// W0(r) = r + (gamma+1)/r radially, W0(x) = x on the line.
double base_superpotential(const OscillatorParams& params, double r);
RealFn base_superpotential(const OscillatorParams& params);

/// E_n = 2n + 2 gamma + 3 (radial) or n + 1/2 (line), n = 0..n_max.
Spectrum analytic_spectrum(const OscillatorParams& params, int n_max);

/// Unnormalized eigenfunction of base_potential for level n.
RealFn analytic_eigenfunction(const OscillatorParams& params, int n);

/// V+ = (W^2 + W')/2 and V- = (W^2 - W')/2.
std::pair<RealFn, RealFn> partner_pair(RealFn w, RealFn derivative);

}  // namespace cesforge
