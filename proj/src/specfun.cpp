#include "cesforge/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cesforge/error.hpp"

namespace cesforge::specfun {

namespace {

bool is_pole(double b) { return as_nonpositive_integer(b).has_value(); }

[[noreturn]] void throw_pole(double b) {
  std::ostringstream msg;
  msg << "F(a,b;z) undefined: b = " << b << " is a non-positive integer";
  throw Error(Errc::parameter_pole, msg.str());
}

// Plain Kummer series with compensated long double accumulation.
double series_sum(double a, double b, double z, const SeriesOptions& options) {
  long double sum = 1.0L;
  long double carry = 0.0L;
  long double term = 1.0L;
  int quiet = 0;
  for (int k = 0; k < options.max_terms; ++k) {
    term *= (static_cast<long double>(a) + k) / (static_cast<long double>(b) + k) *
            static_cast<long double>(z) / (k + 1);
    const long double y = term - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    if (std::fabs(term) < options.tolerance * std::fabs(sum)) {
      if (++quiet >= options.quiet_terms) return static_cast<double>(sum);
    } else {
      quiet = 0;
    }
  }
  std::ostringstream msg;
  msg << "Kummer series F(" << a << "," << b << ";" << z << ") did not converge in "
      << options.max_terms << " terms";
  throw Error(Errc::no_convergence, msg.str());
}

}  // namespace

std::optional<int> as_nonpositive_integer(double a) {
  const double r = std::round(a);
  if (r <= 0.0 && std::fabs(a - r) < 1e-12) return static_cast<int>(r);
  return std::nullopt;
}

PolyValue evaluate_polynomial(std::span<const double> c, double x) {
  long double p = 0.0L, dp = 0.0L, ddp = 0.0L;
  for (std::size_t k = c.size(); k-- > 0;) {
    ddp = ddp * x + 2.0L * dp;
    dp = dp * x + p;
    p = p * x + c[k];
  }
  return {static_cast<double>(p), static_cast<double>(dp), static_cast<double>(ddp)};
}

PolySeries PolySeries::kummer(double a, double b, SeriesOptions options) {
  if (auto n = as_nonpositive_integer(a)) {
    PolySeries p = polynomial_form(-*n, b);
    p.options_ = options;
    return p;
  }
  if (is_pole(b)) throw_pole(b);
  PolySeries p;
  p.kind_ = Kind::infinite_series;
  p.a_ = a;
  p.b_ = b;
  p.options_ = options;
  p.coefficients_ = {1.0};
  return p;
}

PolySeries PolySeries::from_coefficients(std::vector<double> coefficients) {
  if (coefficients.empty() || coefficients.front() != 1.0) {
    throw Error(Errc::invalid_argument, "polynomial coefficient 0 must equal 1");
  }
  while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
  PolySeries p;
  p.kind_ = Kind::finite_polynomial;
  p.a_ = -static_cast<double>(coefficients.size() - 1);
  p.b_ = std::numeric_limits<double>::quiet_NaN();
  p.coefficients_ = std::move(coefficients);
  return p;
}

int PolySeries::degree() const {
  return is_polynomial() ? static_cast<int>(coefficients_.size()) - 1 : -1;
}

double PolySeries::operator()(double z) const { return derivative(z, 0); }

double PolySeries::derivative(double z, int order) const {
  if (order < 0 || order > 2) {
    throw Error(Errc::invalid_argument, "derivative order must be 0, 1 or 2");
  }
  if (is_polynomial()) {
    const PolyValue v = evaluate_polynomial(coefficients_, z);
    return order == 0 ? v.value : order == 1 ? v.d1 : v.d2;
  }
  if (order == 0) return specfun::kummer(a_, b_, z, options_);
  return kummer_derivative(a_, b_, z, order, options_);
}

PolySeries polynomial_form(int n, double b) {
  if (n < 0) throw Error(Errc::invalid_argument, "polynomial degree must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1.0;
  long double coef = 1.0L;
  for (int k = 1; k <= n; ++k) {
    const double pole = b + (k - 1);
    if (std::fabs(pole) < 1e-12) throw_pole(b);
    coef *= (static_cast<long double>(-n) + (k - 1)) / (static_cast<long double>(pole) * k);
    c[static_cast<std::size_t>(k)] = static_cast<double>(coef);
  }
  return PolySeries::from_coefficients(std::move(c));
}

double kummer(double a, double b, double z, SeriesOptions options) {
  if (auto n = as_nonpositive_integer(a)) return polynomial_form(-*n, b)(z);
  if (is_pole(b)) throw_pole(b);
  if (z == 0.0) return 1.0;
  if (z < 0.0) {
    // F(a,b;z) = e^z F(b-a,b;-z); no cancellation in the positive-argument sum.
    const double scale = std::exp(z);
    if (auto m = as_nonpositive_integer(b - a)) return scale * polynomial_form(-*m, b)(-z);
    return scale * series_sum(b - a, b, -z, options);
  }
  return series_sum(a, b, z, options);
}

double kummer_derivative(double a, double b, double z, int order, SeriesOptions options) {
  if (order != 1 && order != 2) {
    throw Error(Errc::invalid_argument, "kummer_derivative order must be 1 or 2");
  }
  if (auto n = as_nonpositive_integer(a)) return polynomial_form(-*n, b).derivative(z, order);
  if (is_pole(b)) throw_pole(b);
  if (order == 1) return a / b * kummer(a + 1.0, b + 1.0, z, options);
  return a * (a + 1.0) / (b * (b + 1.0)) * kummer(a + 2.0, b + 2.0, z, options);
}

std::vector<double> real_roots(std::span<const double> coefficients) {
  std::vector<double> c(coefficients.begin(), coefficients.end());
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  std::vector<double> roots;
  const std::size_t degree = c.empty() ? 0 : c.size() - 1;
  if (degree == 0) return roots;
  if (degree == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  if (degree == 2) {
    const double disc = c[1] * c[1] - 4.0 * c[2] * c[0];
    if (disc < 0.0) return roots;
    const double q = -0.5 * (c[1] + std::copysign(std::sqrt(disc), c[1]));
    if (q != 0.0) {
      roots.push_back(q / c[2]);
      roots.push_back(c[0] / q);
    } else {
      roots.push_back(0.0);
      roots.push_back(0.0);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  const auto n = static_cast<Eigen::Index>(degree);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[degree];
  const Eigen::VectorXcd eig = companion.eigenvalues();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = eig[i].real();
    if (std::fabs(eig[i].imag()) > 1e-6 * std::max(1.0, std::fabs(re))) continue;
    double x = re;
    for (int it = 0; it < 20; ++it) {
      const PolyValue v = evaluate_polynomial(c, x);
      if (v.d1 == 0.0) break;
      const double dx = v.value / v.d1;
      x -= dx;
      if (std::fabs(dx) <= 1e-15 * std::max(1.0, std::fabs(x))) break;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace cesforge::specfun
