#include "cesforge/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cesforge/error.hpp"

namespace cesforge {

namespace {

void require_nodeless(const PhiFunction& phi, const Interval& domain) {
  const NodeReport report = check_nodeless(phi, domain);
  if (report.nodeless) return;
  std::ostringstream msg;
  msg << "phi has " << report.nodes.size() << " node(s) in the domain, first at r = "
      << report.nodes.front();
  throw Error(Errc::node_in_domain, msg.str());
}

Interval grid_span(const Grid& grid) {
  const double pad = 0.5 * grid.step();
  double lo = grid.lo() - pad;
  if (grid.geometry() == Geometry::radial) lo = std::max(lo, 0.0);
  return {lo, grid.hi() + pad};
}

double pole_checked(double g, double r2) {
  const double d = 1.0 + g * r2;
  if (std::fabs(d) < 1e-14) {
    std::ostringstream msg;
    msg << "w(r) has a pole at r = " << std::sqrt(r2) << " (g = " << g << ")";
    throw Error(Errc::node_in_domain, msg.str());
  }
  return d;
}

}  // namespace

DarbouxPartner::DarbouxPartner(PotentialModel v1, PhiFunction phi, Interval domain)
    : v1_(std::move(v1)), phi_(std::move(phi)) {
  require_nodeless(phi_, domain);
}

GridFunction transform(const PotentialModel& v1, const PhiFunction& phi, const Grid& grid) {
  const DarbouxPartner v2(v1, phi, grid_span(grid));
  return sample([&](double r) { return v2(r); }, grid.points());
}

PotentialModel closed_form_v2(const TransformKind& kind, double gamma, int n) {
  const PhiConstruction c = build_phi(kind, gamma, n);
  require_nodeless(c.phi, c.phi.domain());
  const FactorizationSpec& s = c.spec;
  const bool line = s.geometry() == Geometry::line;
  const double centrifugal = line ? 0.0 : gamma * (gamma + 1.0) + 2.0 * s.A;
  const double constant = line ? -s.B : gamma + 1.5 - s.B;

  std::vector<RationalTerm> rational;
  std::optional<LogPolynomialTerm> log_term;
  if (n == 1) {
    const double g1 = -2.0 * s.C / (2.0 * s.A + 1.0);
    rational.push_back({4.0 * g1 * g1, -2.0 * g1, g1});
  } else if (n >= 2) {
    log_term = LogPolynomialTerm{n, s.b, s.C};
  }
  return {s.geometry(), 0.5, centrifugal, constant, std::move(rational), log_term};
}

double w_correction(const RiccatiCorrection& corr, double r) {
  const double r2 = r * r;
  double w = 0.0;
  for (double g : corr.g) w += 2.0 * g * r / pole_checked(g, r2);
  return w;
}

double w_correction_derivative(const RiccatiCorrection& corr, double r) {
  const double r2 = r * r;
  double dw = 0.0;
  for (double g : corr.g) {
    const double d = pole_checked(g, r2);
    dw += 2.0 * g * (1.0 - g * r2) / (d * d);
  }
  return dw;
}

std::vector<double> riccati_residual(const RiccatiCorrection& corr, double gamma,
                                     const std::vector<double>& x) {
  return riccati_residual(corr, base_superpotential(OscillatorParams{gamma, Geometry::radial}), x);
}

std::vector<double> riccati_residual(const RiccatiCorrection& corr, const RealFn& w0,
                                     const std::vector<double>& x) {
  // A pole between two samples shows up as a sign change of 1 + g r^2.
  for (double g : corr.g) {
    for (std::size_t i = 1; i < x.size(); ++i) {
      if ((1.0 + g * x[i - 1] * x[i - 1]) * (1.0 + g * x[i] * x[i]) <= 0.0) {
        std::ostringstream msg;
        msg << "correction has a pole between r = " << x[i - 1] << " and " << x[i];
        throw Error(Errc::node_in_domain, msg.str());
      }
    }
  }
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = w_correction(corr, x[i]);
    const double dw = w_correction_derivative(corr, x[i]);
    out[i] = 0.5 * (w * w + dw) + w0(x[i]) * w - corr.delta;
  }
  return out;
}

RealFn superpotential_from_phi(const PhiFunction& phi, double c) {
  return [phi, c](double r) {
    const PhiJet j = phi.jet(r);
    if (j.value == 0.0 || !std::isfinite(j.log_d1)) {
      std::ostringstream msg;
      msg << "phi vanishes at r = " << r;
      throw Error(Errc::node_in_domain, msg.str());
    }
    return j.log_d1 + c;
  };
}

double identity_w2p2(const PhiFunction& phi, const RealFn& w, double epsilon, double delta,
                     const std::vector<double>& x) {
  const RealFn log_d1 = superpotential_from_phi(phi, 0.0);
  double worst = 0.0;
  for (double r : x) {
    const double l = log_d1(r);
    const double wr = w(r);
    worst = std::max(worst, std::fabs((wr - l) * (wr + l) - 2.0 * (epsilon + delta)));
  }
  return worst;
}

PhiFunction product_phi(double gamma, const std::vector<double>& g, double B) {
  if (B != 1.0 && B != -1.0) throw Error(Errc::invalid_argument, "B must be +-1");
  std::vector<double> factors;
  for (double gi : g) {
    if (gi == 0.0) continue;  // g0 = 0 contributes the factor 1
    if (std::find(factors.begin(), factors.end(), gi) != factors.end()) {
      throw Error(Errc::invalid_argument, "product factors g_i must be distinct");
    }
    factors.push_back(gi);
  }
  std::vector<double> c{1.0};
  for (double gi : factors) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] += gi * c[k - 1];
  }
  return {B, 1.0, {PhiTerm{1.0, gamma + 1.0, specfun::PolySeries::from_coefficients(c)}},
          Geometry::radial, Interval{0.0, std::numeric_limits<double>::infinity()}};
}

std::vector<double> product_factors(const PhiFunction& phi) {
  const std::vector<double> c = phi.polynomial_in_r2();
  const std::vector<double> roots = specfun::real_roots(c);
  if (static_cast<int>(roots.size()) != phi.poly().degree()) {
    throw Error(Errc::invalid_argument, "polynomial part has complex roots in r^2");
  }
  std::vector<double> g;
  for (double u : roots) g.push_back(-1.0 / u);
  return g;
}

ReducedSuperpotential riccati_split(const FactorizationSpec& spec, const PhiFunction& phi) {
  const double A = spec.A;
  const double B = spec.B;
  const bool line = spec.geometry() == Geometry::line;
  RealFn w0 = line ? RealFn([B](double x) { return B * x; })
                   : RealFn([A, B](double r) { return A / r + B * r; });
  // V1 - (W0^2 + W0')/2 is a constant for both geometries.
  const double offset = line ? -0.5 * B : spec.gamma + 1.5 - B * (A + 0.5);
  return {std::move(w0), RiccatiCorrection{product_factors(phi), offset - spec.epsilon}};
}

double grid_norm(const std::vector<double>& f, double step) {
  long double s = 0.0L;
  for (double v : f) s += static_cast<long double>(v) * v;
  return static_cast<double>(std::sqrt(s * step));
}

void normalize(std::vector<double>& f, double step) {
  const double n = grid_norm(f, step);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::null_result, "cannot normalize a null function");
  for (double& v : f) v /= n;
}

std::vector<double> wavefunction_map(const PhiFunction& phi, const std::vector<double>& x,
                                     const std::vector<double>& psi1) {
  const std::size_t n = x.size();
  if (n < 5 || psi1.size() != n) {
    throw Error(Errc::invalid_argument, "wavefunction_map needs matching grids of >= 5 points");
  }
  const double h = x[1] - x[0];
  std::vector<double> d(n);
  const auto& f = psi1;
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (-psi1[i + 2] + 8.0 * psi1[i + 1] - 8.0 * psi1[i - 1] + psi1[i - 2]) / (12.0 * h);
  }
  d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
  d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / (12.0 * h);

  std::vector<double> psi2(n);
  for (std::size_t i = 0; i < n; ++i) psi2[i] = d[i] - phi.log_derivative(x[i]) * psi1[i];
  const double scale = grid_norm(d, h);
  if (!(grid_norm(psi2, h) > 1e-4 * scale)) {
    throw Error(Errc::null_result,
                "intertwined function vanishes: psi1 is annihilated by d/dr - phi'/phi");
  }
  normalize(psi2, h);
  return psi2;
}

OneDimensionalCase one_dimensional_case(const Grid& grid) {
  if (grid.geometry() != Geometry::line) {
    throw Error(Errc::invalid_argument, "one-dimensional case needs a line grid");
  }
  PhiConstruction c = build_phi(TransformKind::of(TransformTag::OneDim), 0.0, 1);
  GridFunction v2 = transform(base_potential(OscillatorParams::line()), c.phi, grid);
  std::vector<double> ground(v2.x.size());
  for (std::size_t i = 0; i < ground.size(); ++i) ground[i] = 1.0 / c.phi(v2.x[i]);
  normalize(ground, grid.step());
  return {std::move(c.phi), std::move(v2), c.spec.epsilon, std::move(ground)};
}

}  // namespace cesforge
