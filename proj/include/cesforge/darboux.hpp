#pragma once

#include <vector>

#include "cesforge/factorization.hpp"
#include "cesforge/grid.hpp"
#include "cesforge/oscillator.hpp"

namespace cesforge {

/// V2 = V1 - (ln phi)'' evaluated from phi's exact logarithmic derivatives.
class DarbouxPartner {
 public:
  /// Throws node_in_domain if phi vanishes inside the domain.
  DarbouxPartner(PotentialModel v1, PhiFunction phi, Interval domain);

  double operator()(double r) const { return v1_(r) - phi_.log_second_derivative(r); }
  const PotentialModel& base() const { return v1_; }
  const PhiFunction& phi() const { return phi_; }

 private:
  PotentialModel v1_;
  PhiFunction phi_;
};

/// V2 sampled on every point of the grid (nodelessness checked on the grid span).
GridFunction transform(const PotentialModel& v1, const PhiFunction& phi, const Grid& grid);

/// Closed form V2 = r^2/2 + [g(g+1)+2A]/(2r^2) + g + 3/2 - B - (ln F(-N,A+1/2;Cr^2))''.
/// N = 1 is expanded into rational terms with g1 = -2C/(2A+1); N >= 2 keeps
/// the log term. The line case uses the constant -B.
PotentialModel closed_form_v2(const TransformKind& kind, double gamma, int n);

/// Rational Riccati correction w(r) = sum 2 g_i r/(1 + g_i r^2).
struct RiccatiCorrection {
  std::vector<double> g;
  double delta = 0.0;
};

double w_correction(const RiccatiCorrection& corr, double r);
/// w'(r)
double w_correction_derivative(const RiccatiCorrection& corr, double r);

/// (w^2 + w')/2 + W0 w - Delta on each x, with W0 the base superpotential.
std::vector<double> riccati_residual(const RiccatiCorrection& corr, double gamma,
                                     const std::vector<double>& x);
/// Same with an arbitrary reference superpotential W0.
std::vector<double> riccati_residual(const RiccatiCorrection& corr, const RealFn& w0,
                                     const std::vector<double>& x);

/// W(r) = phi'/phi + c.
RealFn superpotential_from_phi(const PhiFunction& phi, double c = 0.0);

/// sup_x |[W - (ln phi)'][W + (ln phi)'] - 2(eps + Delta)|.
double identity_w2p2(const PhiFunction& phi, const RealFn& w, double epsilon, double delta,
                     const std::vector<double>& x);

/// r^{gamma+1} exp(B r^2/2) prod (1 + g_i r^2).
PhiFunction product_phi(double gamma, const std::vector<double>& g, double B);

/// g_i such that F(C u) = prod (1 + g_i u) for a polynomial phi; throws if a
/// root is complex.
std::vector<double> product_factors(const PhiFunction& phi);

/// Reference superpotential A/r + B r of a single-term phi and the Riccati
/// constant Delta that pairs with it (Delta = -eps for T3).
struct ReducedSuperpotential {
  RealFn w0;
  RiccatiCorrection correction;
};
ReducedSuperpotential riccati_split(const FactorizationSpec& spec, const PhiFunction& phi);

/// psi2 = psi1' - (phi'/phi) psi1, normalized on the grid points.
/// Throws null_result when psi2 vanishes (E = eps).
std::vector<double> wavefunction_map(const PhiFunction& phi, const std::vector<double>& x,
                                     const std::vector<double>& psi1);

struct OneDimensionalCase {
  PhiFunction phi;
  GridFunction v2;
  double epsilon;
  std::vector<double> ground_state;  // normalized 1/phi on v2.x
};

/// phi(x) = exp(x^2/2)(1 + 2x^2) on the line grid.
OneDimensionalCase one_dimensional_case(const Grid& grid = Grid::line_default());

/// Discrete L2 norm sqrt(h * sum f^2) and normalization on a uniform grid.
double grid_norm(const std::vector<double>& f, double step);
void normalize(std::vector<double>& f, double step);

}  // namespace cesforge
