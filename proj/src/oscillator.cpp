#include "cesforge/oscillator.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cesforge/error.hpp"
#include "cesforge/specfun.hpp"

namespace cesforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// True when some |r| with r^2 = u lies inside the domain.
bool radius_in_domain(double u, Geometry geometry, const Interval& domain) {
  if (!(u > 0.0)) return false;
  const double r = std::sqrt(u);
  if (geometry == Geometry::line) return domain.contains(r) || domain.contains(-r);
  return domain.contains(r);
}

}  // namespace

OscillatorParams OscillatorParams::radial(double gamma) {
  OscillatorParams p{gamma, Geometry::radial};
  p.validate();
  return p;
}

void OscillatorParams::validate() const {
  if (geometry == Geometry::radial && !(gamma > 0.0)) {
    std::ostringstream msg;
    msg << "radial oscillator needs gamma > 0 (got " << gamma << ")";
    throw Error(Errc::invalid_argument, msg.str());
  }
}

PotentialModel::PotentialModel(Geometry geometry, double quad, double centrifugal,
                               double constant, std::vector<RationalTerm> rational_terms,
                               std::optional<LogPolynomialTerm> log_term,
                               std::optional<Interval> domain)
    : geometry_(geometry),
      quad_(quad),
      centrifugal_(centrifugal),
      constant_(constant),
      rational_(std::move(rational_terms)),
      log_term_(log_term),
      domain_(domain.value_or(geometry == Geometry::line ? Interval{-kInf, kInf}
                                                          : Interval{0.0, kInf})) {
  if (geometry_ == Geometry::line && centrifugal_ != 0.0) {
    throw Error(Errc::invalid_argument, "line potentials carry no centrifugal term");
  }
  for (const auto& t : rational_) {
    if (t.g < 0.0 && radius_in_domain(-1.0 / t.g, geometry_, domain_)) {
      std::ostringstream msg;
      msg << "rational term has a pole at r = " << std::sqrt(-1.0 / t.g) << " (g = " << t.g
          << ")";
      throw Error(Errc::node_in_domain, msg.str());
    }
  }
  if (log_term_) {
    const auto poly = specfun::polynomial_form(log_term_->n, log_term_->b);
    log_coefficients_ = poly.coefficients();
    double scale = 1.0;
    for (auto& c : log_coefficients_) {
      c *= scale;
      scale *= log_term_->c;
    }
    for (double u : specfun::real_roots(log_coefficients_)) {
      if (radius_in_domain(u, geometry_, domain_)) {
        std::ostringstream msg;
        msg << "ln F term is singular at r = " << std::sqrt(u);
        throw Error(Errc::node_in_domain, msg.str());
      }
    }
  }
}

double PotentialModel::operator()(double r) const {
  const double r2 = r * r;
  double v = quad_ * r2 + constant_;
  if (centrifugal_ != 0.0) v += centrifugal_ / (2.0 * r2);
  for (const auto& t : rational_) {
    const double d = 1.0 + t.g * r2;
    v += t.p * r2 / (d * d) + t.q / d;
  }
  if (log_term_) {
    // d/dr ln P(r^2) = 2 r P'/P ; derivative again gives the bracket below.
    const auto pv = specfun::evaluate_polynomial(log_coefficients_, r2);
    const double ratio1 = pv.d1 / pv.value;
    const double ratio2 = pv.d2 / pv.value;
    v -= 2.0 * ratio1 + 4.0 * r2 * (ratio2 - ratio1 * ratio1);
  }
  return v;
}

std::string PotentialModel::describe() const {
  const char* x = geometry_ == Geometry::line ? "x" : "r";
  std::ostringstream out;
  out << std::setprecision(12);
  const auto sign = [&out](double v) -> double {
    out << (v < 0.0 ? " - " : " + ");
    return std::fabs(v);
  };
  out << quad_ << " " << x << "^2";
  if (centrifugal_ != 0.0) out << sign(centrifugal_) << "/(2 " << x << "^2)";
  if (constant_ != 0.0) out << sign(constant_);
  for (const auto& t : rational_) {
    std::ostringstream den;
    den << std::setprecision(12) << "(1" << (t.g < 0.0 ? " - " : " + ") << std::fabs(t.g) << " " << x
        << "^2)";
    out << sign(t.p) << " " << x << "^2/" << den.str() << "^2";
    out << sign(t.q) << "/" << den.str();
  }
  if (log_term_) {
    out << " - d^2/d" << x << "^2 ln F(" << -log_term_->n << ", " << log_term_->b << "; "
        << log_term_->c << " " << x << "^2)";
  }
  return out.str();
}

PotentialModel base_potential(const OscillatorParams& params) {
  params.validate();
  if (params.geometry == Geometry::line) return {Geometry::line, 0.5, 0.0, 0.0};
  const double g = params.gamma;
  return {Geometry::radial, 0.5, g * (g + 1.0), g + 1.5};
}

double base_superpotential(const OscillatorParams& params, double r) {
  if (params.geometry == Geometry::line) return r;
  if (!(r > 0.0)) throw Error(Errc::domain, "radial superpotential needs r > 0");
  return r + (params.gamma + 1.0) / r;
}

RealFn base_superpotential(const OscillatorParams& params) {
  return [params](double r) { return base_superpotential(params, r); };
}

Spectrum analytic_spectrum(const OscillatorParams& params, int n_max) {
  params.validate();
  if (n_max < 0) throw Error(Errc::invalid_argument, "n_max must be >= 0");
  Spectrum s;
  for (int n = 0; n <= n_max; ++n) {
    s.energies.push_back(params.geometry == Geometry::line ? n + 0.5
                                                           : 2.0 * n + 2.0 * params.gamma + 3.0);
    s.node_counts.push_back(n);
  }
  return s;
}

RealFn analytic_eigenfunction(const OscillatorParams& params, int n) {
  params.validate();
  if (n < 0) throw Error(Errc::invalid_argument, "level must be >= 0");
  if (params.geometry == Geometry::radial) {
    const double power = params.gamma + 1.0;
    auto poly = specfun::polynomial_form(n, params.gamma + 1.5);
    return [power, poly](double r) {
      const double r2 = r * r;
      return std::pow(r, power) * std::exp(-0.5 * r2) * poly(r2);
    };
  }
  const int m = n / 2;
  const bool odd = (n % 2) == 1;
  auto poly = specfun::polynomial_form(m, odd ? 1.5 : 0.5);
  return [odd, poly](double x) {
    const double x2 = x * x;
    return (odd ? x : 1.0) * std::exp(-0.5 * x2) * poly(x2);
  };
}

std::pair<RealFn, RealFn> partner_pair(RealFn w, RealFn derivative) {
  RealFn plus = [w, derivative](double r) {
    const double v = w(r);
    return 0.5 * (v * v + derivative(r));
  };
  RealFn minus = [w, derivative](double r) {
    const double v = w(r);
    return 0.5 * (v * v - derivative(r));
  };
  return {std::move(plus), std::move(minus)};
}

}  // namespace cesforge
