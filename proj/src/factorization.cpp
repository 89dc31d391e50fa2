#include "cesforge/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cesforge/error.hpp"

namespace cesforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kParamTol = 1e-9;

bool near(double x, double y) { return std::fabs(x - y) <= kParamTol * std::max(1.0, std::fabs(y)); }

[[noreturn]] void throw_invalid(const std::string& what) {
  throw Error(Errc::invalid_argument, what);
}

void require_sign(double s, const char* name) {
  if (s != 1.0 && s != -1.0) {
    std::ostringstream msg;
    msg << name << " must be +1 or -1 (got " << s << ")";
    throw_invalid(msg.str());
  }
}

Interval default_domain(Geometry g) {
  return g == Geometry::line ? Interval{-kInf, kInf} : Interval{0.0, kInf};
}

// Finite interval used for sign-change scans.
Interval scan_domain(const Interval& d, Geometry g) {
  Interval s = d;
  if (g == Geometry::radial) s.lo = std::max(s.lo, 1e-6);
  if (!std::isfinite(s.lo)) s.lo = -12.0;
  if (!std::isfinite(s.hi)) s.hi = 12.0;
  return s;
}

}  // namespace

TransformKind TransformKind::of(TransformTag tag) {
  switch (tag) {
    case TransformTag::T1:
      return {tag, OriginBehavior::regular, Asymptotic::convergent, SpectralAction::delete_ground};
    case TransformTag::T2:
      return {tag, OriginBehavior::singular, Asymptotic::divergent, SpectralAction::add_ground};
    case TransformTag::T3:
      return {tag, OriginBehavior::regular, Asymptotic::divergent, SpectralAction::none};
    case TransformTag::T4:
      return {tag, OriginBehavior::singular, Asymptotic::convergent, SpectralAction::none};
    case TransformTag::OneDim:
      return {tag, OriginBehavior::line, Asymptotic::divergent, SpectralAction::add_ground_line};
  }
  throw_invalid("unknown transform tag");
}

TransformKind TransformKind::parse(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "t1") return of(TransformTag::T1);
  if (s == "t2") return of(TransformTag::T2);
  if (s == "t3") return of(TransformTag::T3);
  if (s == "t4") return of(TransformTag::T4);
  if (s == "1d" || s == "onedim") return of(TransformTag::OneDim);
  throw_invalid("unknown transform kind '" + name + "' (expected t1|t2|t3|t4|1d)");
}

std::string TransformKind::name() const {
  switch (tag) {
    case TransformTag::T1: return "t1";
    case TransformTag::T2: return "t2";
    case TransformTag::T3: return "t3";
    case TransformTag::T4: return "t4";
    case TransformTag::OneDim: return "1d";
  }
  return "?";
}

bool TransformKind::requires_positive_gamma() const {
  return tag == TransformTag::T2 || tag == TransformTag::T4;
}

PhiFunction::PhiFunction(double gauss_sign, double arg_scale, std::vector<PhiTerm> terms,
                         Geometry geometry, Interval domain)
    : gauss_sign_(gauss_sign),
      arg_scale_(arg_scale),
      terms_(std::move(terms)),
      geometry_(geometry),
      domain_(domain) {
  if (terms_.empty()) throw_invalid("phi needs at least one term");
}

bool PhiFunction::is_polynomial() const {
  return terms_.size() == 1 && terms_.front().poly.is_polynomial();
}

std::vector<double> PhiFunction::polynomial_in_r2() const {
  if (!is_polynomial()) throw_invalid("phi is not a single polynomial term");
  std::vector<double> c = poly().coefficients();
  double scale = 1.0;
  for (auto& ck : c) {
    ck *= scale;
    scale *= arg_scale_;
  }
  return c;
}

PhiFunction::Reduced PhiFunction::reduced(double r) const {
  const double r2 = r * r;
  const double z = arg_scale_ * r2;
  Reduced out{0.0, 0.0, 0.0};
  for (const auto& t : terms_) {
    const double f = t.poly(z);
    const double fz = t.poly.derivative(z, 1);
    const double fzz = t.poly.derivative(z, 2);
    const double g = f;
    const double g1 = 2.0 * arg_scale_ * r * fz;
    const double g2 = 2.0 * arg_scale_ * fz + 4.0 * arg_scale_ * arg_scale_ * r2 * fzz;
    if (t.power == 0.0) {
      out.s += t.weight * g;
      out.ds += t.weight * g1;
      out.dds += t.weight * g2;
      continue;
    }
    const double A = t.power;
    const double rp = t.weight * std::pow(r, A);
    out.s += rp * g;
    out.ds += rp * (A / r * g + g1);
    out.dds += rp * (A * (A - 1.0) / r2 * g + 2.0 * A / r * g1 + g2);
  }
  return out;
}

PhiJet PhiFunction::jet(double r) const {
  const Reduced s = reduced(r);
  const double B = gauss_sign_;
  const double q1 = s.ds / s.s;
  const double q2 = s.dds / s.s;
  const double log_d1 = B * r + q1;
  const double second_over_phi = B + B * B * r * r + 2.0 * B * r * q1 + q2;
  return {std::exp(0.5 * B * r * r) * s.s, log_d1, second_over_phi - log_d1 * log_d1};
}

double PhiFunction::operator()(double r) const { return jet(r).value; }

ParameterSolution solve_parameters(double gamma, OriginBehavior branch, double asymptotic_sign) {
  require_sign(asymptotic_sign, "asymptotic sign B");
  double A = 0.0;
  switch (branch) {
    case OriginBehavior::regular: A = gamma + 1.0; break;
    case OriginBehavior::singular: A = -gamma; break;
    case OriginBehavior::line: A = 0.0; break;
  }
  return {A, asymptotic_sign, -asymptotic_sign, A + 0.5};
}

double factorization_energy(const TransformKind& kind, double gamma, int n) {
  if (n < 0) throw_invalid("polynomial degree N must be >= 0");
  double eps = 0.0;
  switch (kind.tag) {
    case TransformTag::T1: eps = 2.0 * n + 2.0 * gamma + 3.0; break;
    case TransformTag::T3: eps = -2.0 * n; break;
    case TransformTag::T4: eps = 2.0 * n + 2.0; break;
    case TransformTag::T2: eps = -2.0 * n + 2.0 * gamma + 1.0; break;
    case TransformTag::OneDim: return -2.0 * n - 0.5;
  }
  if (kind.tag != TransformTag::T1 && eps >= reference_ground_energy(gamma)) {
    std::ostringstream msg;
    msg << kind.name() << " N=" << n << " gamma=" << gamma << ": factorization energy " << eps
        << " is not below the ground state " << reference_ground_energy(gamma);
    throw Error(Errc::ground_state_violation, msg.str());
  }
  return eps;
}

double epsilon_to_a(double epsilon, double gamma, double A, double C) {
  if (C == 0.0) throw_invalid("C must be nonzero");
  return -epsilon / (2.0 * C) + gamma / (2.0 * C) + 3.0 / (4.0 * C) + 0.5 * A + 0.25;
}

PhiConstruction build_phi(const TransformKind& kind, double gamma, int n) {
  if (n < 0) throw_invalid("polynomial degree N must be >= 0");
  const bool line = kind.tag == TransformTag::OneDim;
  if (!line && !(gamma > 0.0)) {
    std::ostringstream msg;
    msg << kind.name() << " needs gamma > 0 (got " << gamma << ")";
    throw_invalid(msg.str());
  }
  const double eps = factorization_energy(kind, gamma, n);

  ParameterSolution p{};
  double a = 0.0;
  switch (kind.tag) {
    case TransformTag::T1: p = solve_parameters(gamma, OriginBehavior::regular, -1.0); break;
    case TransformTag::T3: p = solve_parameters(gamma, OriginBehavior::regular, 1.0); break;
    case TransformTag::T4: p = solve_parameters(gamma, OriginBehavior::singular, -1.0); break;
    case TransformTag::T2: p = solve_parameters(gamma, OriginBehavior::singular, 1.0); break;
    case TransformTag::OneDim: p = solve_parameters(gamma, OriginBehavior::line, 1.0); break;
  }
  // The line problem is the radial one at gamma = -1 (A = 0) with the
  // constant 1/2 of V1 removed, so its energies sit 1/2 lower.
  a = line ? epsilon_to_a(eps + 0.5, -1.0, p.A, p.C) : epsilon_to_a(eps, gamma, p.A, p.C);
  if (!near(a, -static_cast<double>(n))) {
    std::ostringstream msg;
    msg << "parameter condition gives a = " << a << ", expected " << -n;
    throw Error(Errc::invalid_argument, msg.str());
  }
  a = -static_cast<double>(n);

  const bool regular = kind.origin != OriginBehavior::singular;
  FactorizationSpec spec{kind,        gamma, n,   p.A,
                         p.B,         p.C,   a,   p.b,
                         eps,         regular ? 1.0 : 0.0,
                         regular ? 0.0 : 1.0};
  const Geometry geometry = spec.geometry();
  PhiFunction phi(p.B, p.C, {PhiTerm{1.0, p.A, specfun::polynomial_form(n, p.b)}}, geometry,
                  default_domain(geometry));
  return {spec, std::move(phi)};
}

PhiFunction general_phi(double gamma, double epsilon, double alpha1, double alpha2, double B) {
  require_sign(B, "asymptotic sign B");
  if (alpha1 == 0.0 && alpha2 == 0.0) throw_invalid("alpha1 and alpha2 cannot both vanish");
  const double C = -B;
  std::vector<PhiTerm> terms;
  if (alpha1 != 0.0) {
    const double A = gamma + 1.0;
    terms.push_back({alpha1, A, specfun::PolySeries::kummer(epsilon_to_a(epsilon, gamma, A, C), A + 0.5)});
  }
  if (alpha2 != 0.0) {
    const double A = -gamma;
    terms.push_back({alpha2, A, specfun::PolySeries::kummer(epsilon_to_a(epsilon, gamma, A, C), A + 0.5)});
  }
  return {B, C, std::move(terms), Geometry::radial, default_domain(Geometry::radial)};
}

NodeReport check_nodeless(const PhiFunction& phi, const Interval& domain) {
  NodeReport report{true, {}};
  if (phi.is_polynomial()) {
    for (double u : specfun::real_roots(phi.polynomial_in_r2())) {
      if (!(u > 0.0)) continue;
      const double r = std::sqrt(u);
      if (phi.geometry() == Geometry::line && domain.contains(-r)) report.nodes.push_back(-r);
      if (domain.contains(r)) report.nodes.push_back(r);
    }
  } else {
    const Interval scan = scan_domain(domain, phi.geometry());
    constexpr int kPoints = 10000;
    const double h = (scan.hi - scan.lo) / kPoints;
    auto f = [&](double r) { return phi.reduced(r).s; };
    double x0 = scan.lo;
    double f0 = f(x0);
    if (f0 == 0.0 && domain.contains(x0)) report.nodes.push_back(x0);
    for (int i = 1; i <= kPoints; ++i) {
      const double x1 = scan.lo + i * h;
      const double f1 = f(x1);
      if (f1 == 0.0) {
        if (domain.contains(x1)) report.nodes.push_back(x1);
      } else if (f0 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
        double lo = x0, hi = x1, flo = f0;
        while (hi - lo > 1e-10) {
          const double mid = 0.5 * (lo + hi);
          const double fm = f(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        report.nodes.push_back(0.5 * (lo + hi));
      }
      x0 = x1;
      f0 = f1;
    }
  }
  std::sort(report.nodes.begin(), report.nodes.end());
  report.nodeless = report.nodes.empty();
  return report;
}

DoublePolynomial double_polynomial_condition(int m, int n, double c) {
  require_sign(c, "C");
  if (m < 0 || n < 0) throw_invalid("polynomial degrees must be >= 0");
  // Regular branch a1 = -n; singular branch a2 = a1 - b1 + 1 = -m.
  const double gamma = m - n - 0.5;
  return {c * (m + n + 1) + gamma + 1.5, gamma};
}

TransformKind classify(const FactorizationSpec& spec) {
  auto fail = [&](const std::string& why) -> TransformKind {
    throw Error(Errc::unclassifiable, "no transformation type matches: " + why);
  };
  if (spec.B != 1.0 && spec.B != -1.0) return fail("B is not +-1");
  if (!near(spec.C, -spec.B)) return fail("C != -B");
  if (spec.kind.tag == TransformTag::OneDim) {
    if (spec.A == 0.0 && spec.B == 1.0 && spec.epsilon < 0.5) {
      return TransformKind::of(TransformTag::OneDim);
    }
    return fail("line solution must diverge on both sides below the ground state");
  }
  const double g = spec.gamma;
  OriginBehavior origin{};
  if (near(spec.A, g + 1.0)) {
    origin = OriginBehavior::regular;
  } else if (near(spec.A, -g)) {
    origin = OriginBehavior::singular;
  } else {
    return fail("A is neither gamma+1 nor -gamma");
  }
  const bool convergent = spec.B < 0.0;
  const double e0 = reference_ground_energy(g);
  if (origin == OriginBehavior::regular && convergent) {
    const double level = (spec.epsilon - e0) / 2.0;
    if (level > -kParamTol && near(level, std::round(level))) return TransformKind::of(TransformTag::T1);
    return fail("regular convergent solution off the bound-state ladder");
  }
  if (!(spec.epsilon < e0)) return fail("epsilon is not below the ground state");
  if (origin == OriginBehavior::regular) return TransformKind::of(TransformTag::T3);
  if (g <= 0.0) return fail("singular branch needs gamma > 0");
  return TransformKind::of(convergent ? TransformTag::T4 : TransformTag::T2);
}

double partner_origin_exponent(const FactorizationSpec& spec) {
  switch (spec.kind.tag) {
    case TransformTag::T1:
    case TransformTag::T3: return spec.gamma + 2.0;
    case TransformTag::T2:
    case TransformTag::T4: return spec.gamma;
    case TransformTag::OneDim: return 0.0;
  }
  return 0.0;
}

}  // namespace cesforge
