#include "cesforge/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cesforge/darboux.hpp"
#include "cesforge/eigensolver.hpp"
#include "cesforge/error.hpp"
#include "cesforge/oscillator.hpp"

namespace cesforge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

CheckResult judged(std::string name, double value, double tol, std::string detail = {}) {
  const CheckStatus status = value <= tol ? CheckStatus::pass : CheckStatus::fail;
  return {std::move(name), status, value, tol, std::move(detail)};
}

CheckResult skipped(std::string name, std::string why) {
  return {std::move(name), CheckStatus::skip, kNaN, kNaN, std::move(why)};
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) {
    x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return x;
}

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "?";
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const CheckResult& r) { return r.status == CheckStatus::fail; });
}

double schrodinger_residual(const PhiFunction& phi, const RealFn& v1, double epsilon,
                            const std::vector<double>& x) {
  double worst = 0.0;
  for (double r : x) {
    const PhiJet j = phi.jet(r);
    const double second = j.log_d2 + j.log_d1 * j.log_d1;  // phi''/phi
    const double v = v1(r);
    const double scale = std::fabs(0.5 * second) + std::fabs(v) + std::fabs(epsilon);
    worst = std::max(worst, std::fabs(-0.5 * second + v - epsilon) / scale);
  }
  return worst;
}

std::vector<double> expected_partner_levels(const TransformKind& kind,
                                            const std::vector<double>& reference, double epsilon,
                                            std::size_t count) {
  std::vector<double> out;
  switch (kind.action) {
    case SpectralAction::delete_ground:
      out.assign(reference.begin() + (reference.empty() ? 0 : 1), reference.end());
      break;
    case SpectralAction::add_ground:
    case SpectralAction::add_ground_line:
      out = reference;
      out.push_back(epsilon);
      std::sort(out.begin(), out.end());
      break;
    case SpectralAction::none:
      out = reference;
      break;
  }
  if (out.size() > count) out.resize(count);
  return out;
}

std::vector<CheckResult> verify_case(const VerifyConfig& cfg) {
  std::vector<CheckResult> results;
  const PhiConstruction c = build_phi(cfg.kind, cfg.gamma, cfg.n);
  const FactorizationSpec& spec = c.spec;
  const bool line = spec.geometry() == Geometry::line;
  const OscillatorParams params = line ? OscillatorParams::line() : OscillatorParams::radial(cfg.gamma);
  const Grid grid = cfg.grid ? *cfg.grid : (line ? Grid::line_default() : Grid::radial_default());
  const PotentialModel v1 = base_potential(params);
  const RealFn v1_fn = [&v1](double r) { return v1(r); };
  const double lo = line ? grid.lo() : std::max(grid.lo(), cfg.radial_cutoff);
  const double hi = grid.hi();

  results.push_back(judged("schrodinger_residual",
                           schrodinger_residual(c.phi, v1_fn, spec.epsilon, linspace(lo, hi, 200)),
                           cfg.residual_tol));

  const NodeReport nodes = check_nodeless(c.phi, Interval{line ? -INFINITY : 0.0, INFINITY});
  {
    std::ostringstream detail;
    detail.precision(12);
    if (nodes.nodeless) {
      detail << "no nodes";
    } else {
      detail << "nodes at";
      for (double r : nodes.nodes) detail << ' ' << r;
    }
    results.push_back({"nodeless", nodes.nodeless ? CheckStatus::pass : CheckStatus::fail,
                       nodes.nodeless ? kNaN : nodes.nodes.front(), kNaN, detail.str()});
  }

  const char* downstream[] = {"closed_form_vs_transform", "riccati_residual", "identity_w2p2",
                              "base_spectrum", "partner_spectrum", "intertwining"};
  if (!nodes.nodeless) {
    for (const char* name : downstream) results.push_back(skipped(name, "phi has nodes"));
    return results;
  }

  const PotentialModel closed = closed_form_v2(cfg.kind, cfg.gamma, cfg.n);
  const DarbouxPartner numeric(v1, c.phi, c.phi.domain());
  const std::vector<double> dense = linspace(lo, hi, 4000);
  {
    double worst = 0.0;
    for (double r : dense) worst = std::max(worst, std::fabs(numeric(r) - closed(r)));
    results.push_back(judged("closed_form_vs_transform", worst, cfg.potential_tol, closed.describe()));
  }

  std::optional<ReducedSuperpotential> split;
  try {
    split = riccati_split(spec, c.phi);
  } catch (const Error& e) {
    if (e.code() != Errc::invalid_argument) throw;
  }
  if (split) {
    double worst = 0.0;
    for (double r : riccati_residual(split->correction, split->w0, dense)) {
      worst = std::max(worst, std::fabs(r));
    }
    std::ostringstream detail;
    detail.precision(12);
    detail << "Delta=" << split->correction.delta << " g=[";
    for (std::size_t i = 0; i < split->correction.g.size(); ++i) {
      detail << (i ? "," : "") << split->correction.g[i];
    }
    detail << "]";
    results.push_back(judged("riccati_residual", worst, cfg.identity_tol, detail.str()));

    const RiccatiCorrection corr = split->correction;
    const RealFn w0 = split->w0;
    const RealFn w = [w0, corr](double r) { return w0(r) + w_correction(corr, r); };
    results.push_back(judged("identity_w2p2",
                             identity_w2p2(c.phi, w, spec.epsilon, -spec.epsilon, dense),
                             cfg.identity_tol, "W = W0 + w, Delta = -epsilon"));
  } else {
    results.push_back(skipped("riccati_residual", "polynomial part has complex roots in r^2"));
    results.push_back(judged("identity_w2p2",
                             identity_w2p2(c.phi, superpotential_from_phi(c.phi), spec.epsilon,
                                           -spec.epsilon, dense),
                             cfg.identity_tol, "W = (ln phi)', Delta = -epsilon"));
  }

  // Spectra: reference from the solver, checked against the analytic ladder.
  const int states = cfg.states;
  SolverOptions base_options;
  SolverOptions partner_options;
  if (!line) {
    base_options.origin_exponent = cfg.gamma + 1.0;
    partner_options.origin_exponent = partner_origin_exponent(spec);
  }
  const Spectrum s1 = solve_bound_states(v1_fn, grid, states + 1, base_options);
  {
    const Spectrum analytic = analytic_spectrum(params, states);
    double worst = 0.0;
    for (int i = 0; i <= states; ++i) {
      worst = std::max(worst, std::fabs(s1.energies[i] - analytic.energies[i]));
    }
    results.push_back(judged("base_spectrum", worst, cfg.eigen_tol));
  }
  const RealFn v2_fn = [&closed](double r) { return closed(r); };
  const Spectrum s2 = solve_bound_states(v2_fn, grid, states, partner_options);
  {
    const SpectrumComparison cmp = compare_spectra(s1, s2, cfg.kind, spec.epsilon, cfg.eigen_tol);
    double worst = 0.0;
    std::ostringstream detail;
    detail << "E2 =";
    for (const auto& l : cmp.levels) {
      worst = std::max(worst, std::fabs(l.deviation));
      detail << ' ' << l.observed;
    }
    CheckResult r = judged("partner_spectrum", worst, cfg.eigen_tol, detail.str());
    if (!cmp.pass) r.status = CheckStatus::fail;
    results.push_back(r);
  }

  // Map the lowest surviving reference state and test it against V2.
  {
    const int level = cfg.kind.action == SpectralAction::delete_ground ? 1 : 0;
    const std::vector<double> x = grid.points();
    std::vector<double> psi1 = sample(analytic_eigenfunction(params, level), x).values;
    normalize(psi1, grid.step());
    const std::vector<double> psi2 = wavefunction_map(c.phi, x, psi1);
    const double energy = analytic_spectrum(params, level).energies.back();
    std::size_t first = 0;
    while (first < x.size() && x[first] < lo) ++first;
    const std::vector<double> xs(x.begin() + static_cast<long>(first), x.end());
    const std::vector<double> ps(psi2.begin() + static_cast<long>(first), psi2.end());
    std::ostringstream detail;
    detail << "mapped level " << level << " at E=" << energy;
    results.push_back(judged("intertwining", hamiltonian_residual(v2_fn, xs, ps, energy),
                             cfg.intertwining_tol, detail.str()));
  }
  return results;
}

}  // namespace cesforge
