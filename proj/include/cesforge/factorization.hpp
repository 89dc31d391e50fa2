#pragma once

#include <string>
#include <vector>

#include "cesforge/grid.hpp"
#include "cesforge/specfun.hpp"

namespace cesforge {

enum class TransformTag { T1, T2, T3, T4, OneDim };
enum class OriginBehavior { regular, singular, line };
enum class Asymptotic { convergent, divergent };
enum class SpectralAction { delete_ground, add_ground, none, add_ground_line };

/// Transformation type with its classification contract:
///   T1 regular/convergent/delete-ground, T2 singular/divergent/add-ground,
///   T3 regular/divergent/none,           T4 singular/convergent/none.
struct TransformKind {
  TransformTag tag;
  OriginBehavior origin;
  Asymptotic asymptotic;
  SpectralAction action;

  static TransformKind of(TransformTag tag);
  /// "t1".."t4", "1d"
  static TransformKind parse(const std::string& name);
  std::string name() const;
  /// T2 and T4 are restricted to gamma > 0.
  bool requires_positive_gamma() const;

  friend bool operator==(const TransformKind& a, const TransformKind& b) {
    return a.tag == b.tag;
  }
};

/// Solved ansatz parameters for phi = r^A exp(B r^2/2) F(a,b;C r^2).
struct FactorizationSpec {
  TransformKind kind;
  double gamma;
  int n;
  double A;
  double B;
  double C;
  double a;
  double b;
  double epsilon;
  double alpha1;
  double alpha2;

  Geometry geometry() const {
    return kind.tag == TransformTag::OneDim ? Geometry::line : Geometry::radial;
  }
};

/// One term w r^power F(Cr^2) of the factorization solution.
struct PhiTerm {
  double weight;
  double power;
  specfun::PolySeries poly;
};

struct PhiJet {
  double value;
  double log_d1;  // phi'/phi
  double log_d2;  // (ln phi)'' = phi''/phi - (phi'/phi)^2
};

/// phi(r) = exp(B r^2/2) * sum_j w_j r^{A_j} F_j(C r^2).
class PhiFunction {
 public:
  PhiFunction(double gauss_sign, double arg_scale, std::vector<PhiTerm> terms,
              Geometry geometry, Interval domain);

  double gauss_sign() const { return gauss_sign_; }
  double arg_scale() const { return arg_scale_; }
  const std::vector<PhiTerm>& terms() const { return terms_; }
  Geometry geometry() const { return geometry_; }
  const Interval& domain() const { return domain_; }
  /// Single term whose hypergeometric part is a finite polynomial.
  bool is_polynomial() const;
  double power() const { return terms_.front().power; }
  const specfun::PolySeries& poly() const { return terms_.front().poly; }
  /// Coefficients in u = r^2 of the single polynomial term's F(C u).
  std::vector<double> polynomial_in_r2() const;

  double operator()(double r) const;
  double log_derivative(double r) const { return jet(r).log_d1; }
  double log_second_derivative(double r) const { return jet(r).log_d2; }
  /// Value together with the exact logarithmic derivatives.
  PhiJet jet(double r) const;
  /// phi without its Gaussian factor; for residuals that must avoid overflow.
  struct Reduced {
    double s;
    double ds;
    double dds;
  };
  Reduced reduced(double r) const;

 private:
  double gauss_sign_;
  double arg_scale_;
  std::vector<PhiTerm> terms_;
  Geometry geometry_;
  Interval domain_;
};

struct ParameterSolution {
  double A;
  double B;
  double C;
  double b;
};

ParameterSolution solve_parameters(double gamma, OriginBehavior branch, double asymptotic_sign);

/// T1: 2N+2g+3, T3: -2N, T4: 2N+2, T2: -2N+2g+1, OneDim: -2N-1/2.
double factorization_energy(const TransformKind& kind, double gamma, int n);

double epsilon_to_a(double epsilon, double gamma, double A, double C);

struct PhiConstruction {
  FactorizationSpec spec;
  PhiFunction phi;
};

PhiConstruction build_phi(const TransformKind& kind, double gamma, int n);

/// alpha1 r^{g+1} F(a1, g+3/2; Cr^2) + alpha2 r^{-g} F(a2, -g+1/2; Cr^2), C = -B.
PhiFunction general_phi(double gamma, double epsilon, double alpha1, double alpha2, double B);

struct NodeReport {
  bool nodeless;
  std::vector<double> nodes;
};

/// Zeros of phi inside the domain. Polynomial phi: roots in r^2; otherwise a
/// 1e4-point sign-change scan refined by bisection to 1e-10.
NodeReport check_nodeless(const PhiFunction& phi, const Interval& domain);

struct DoublePolynomial {
  double epsilon;
  double gamma;
};

/// (epsilon, gamma) at which the regular branch terminates at degree n and the
/// singular branch at degree m for argument sign c.
DoublePolynomial double_polynomial_condition(int m, int n, double c);

TransformKind classify(const FactorizationSpec& spec);

/// Ground-state energy 2 gamma + 3 of the radial reference potential.
inline double reference_ground_energy(double gamma) { return 2.0 * gamma + 3.0; }

/// Exponent s of the r^s behaviour of the partner eigenfunctions at the origin.
double partner_origin_exponent(const FactorizationSpec& spec);

}  // namespace cesforge
