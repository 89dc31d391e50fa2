#pragma once

#include <optional>
#include <span>
#include <vector>

namespace cesforge::specfun {

struct SeriesOptions {
  /// A term below tolerance * |running sum| counts as negligible.
  double tolerance = 1e-16;
  /// Consecutive negligible terms required to stop.
  int quiet_terms = 3;
  int max_terms = 500;
};

/// Returns -N when a is a non-positive integer (within 1e-12), else nullopt.
std::optional<int> as_nonpositive_integer(double a);

/// Kummer's function F(a,b;.) as an evaluatable object.
///
/// When a = -N the object is the exact degree-N polynomial (generalized
/// Laguerre up to normalization); otherwise it carries (a, b) and is summed
/// as a series on demand. Coefficient 0 is always 1.
class PolySeries {
 public:
  enum class Kind { finite_polynomial, infinite_series };

  static PolySeries kummer(double a, double b, SeriesOptions options = {});
  /// Finite polynomial with explicit coefficients (ascending powers, c[0]=1).
  static PolySeries from_coefficients(std::vector<double> coefficients);

  Kind kind() const { return kind_; }
  bool is_polynomial() const { return kind_ == Kind::finite_polynomial; }
  /// Degree of the polynomial, -1 for an infinite series.
  int degree() const;
  const std::vector<double>& coefficients() const { return coefficients_; }
  double a() const { return a_; }
  double b() const { return b_; }

  double operator()(double z) const;
  /// d^order/dz^order for order in {0,1,2}.
  double derivative(double z, int order) const;

 private:
  PolySeries() = default;

  Kind kind_ = Kind::finite_polynomial;
  std::vector<double> coefficients_;
  double a_ = 0.0;
  double b_ = 1.0;
  SeriesOptions options_;
};

/// F(a,b;z). Exact finite sum for a = -N; Kummer's transformation for z < 0.
double kummer(double a, double b, double z, SeriesOptions options = {});

/// d^n F/dz^n, n in {1,2}, through F' = (a/b) F(a+1,b+1;z).
double kummer_derivative(double a, double b, double z, int order,
                         SeriesOptions options = {});

/// Coefficients of F(-N,b;z). Errors when (b)_k = 0 for some k < N.
PolySeries polynomial_form(int n, double b);

/// Real roots of c[0] + c[1] x + ... (ascending), sorted. Exact formulas up
/// to degree 2, companion-matrix eigenvalues polished by Newton above.
std::vector<double> real_roots(std::span<const double> coefficients);

/// Evaluate c[0] + c[1] x + ... and its first two derivatives.
struct PolyValue {
  double value;
  double d1;
  double d2;
};
PolyValue evaluate_polynomial(std::span<const double> coefficients, double x);

}  // namespace cesforge::specfun
