#include "cesforge/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cesforge/error.hpp"

namespace cesforge {

namespace {

// Symmetric tridiagonal matrix: diagonal d, off-diagonal e (size n-1).
// psi = to_psi[i] * y[i] maps eigenvectors back to wavefunction values.
struct Tridiagonal {
  std::vector<double> d;
  std::vector<double> e;
  std::vector<double> x;
  std::vector<double> to_psi;
};

void require_finite(double v, double x) {
  if (std::isfinite(v)) return;
  std::ostringstream msg;
  msg << "potential is not finite at x = " << x;
  throw Error(Errc::domain, msg.str());
}

// Line: plain central differences, Dirichlet at both ends.
Tridiagonal assemble_line(const RealFn& v, const Grid& grid) {
  const double h = grid.step();
  const std::size_t n = grid.intervals() - 1;
  Tridiagonal t{std::vector<double>(n), std::vector<double>(n - 1, -0.5 / (h * h)),
                std::vector<double>(n), std::vector<double>(n, 1.0)};
  for (std::size_t i = 0; i < n; ++i) {
    t.x[i] = grid.point(i + 1);
    const double vi = v(t.x[i]);
    require_finite(vi, t.x[i]);
    t.d[i] = 1.0 / (h * h) + vi;
  }
  return t;
}

// Radial: psi = r^s u, so that -1/2 r^{-2s} (r^{2s} u')' + (V - s(s-1)/(2r^2)) u = E u.
// Finite volumes with cell faces at r_i +- h/2; the first cell reaches down to
// r = 0 where the flux r^{2s} u' vanishes, the last node sees u(hi) = 0.
Tridiagonal assemble_radial(const RealFn& v, const Grid& grid, double s) {
  const double h = grid.step();
  const std::size_t n = grid.intervals() - 1;
  const double two_s = 2.0 * s;
  const double lambda = s * (s - 1.0);
  std::vector<double> mass(n), flux(n), diag(n);
  Tridiagonal t{std::vector<double>(n), std::vector<double>(n - 1), std::vector<double>(n),
                std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.point(i + 1);
    t.x[i] = r;
    const double vi = v(r);
    require_finite(vi, r);
    const double reduced = vi - 0.5 * lambda / (r * r);
    const double right = r + 0.5 * h;
    flux[i] = 0.5 * std::pow(right, two_s) / h;  // face between i and i+1
    mass[i] = i == 0 ? std::pow(right, two_s + 1.0) / (two_s + 1.0) : h * std::pow(r, two_s);
    diag[i] = flux[i] + (i == 0 ? 0.0 : flux[i - 1]) + reduced * mass[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::sqrt(mass[i]);
    t.d[i] = diag[i] / mass[i];
    if (i + 1 < n) t.e[i] = -flux[i] / (m * std::sqrt(mass[i + 1]));
    t.to_psi[i] = std::pow(t.x[i], s) / m;
  }
  return t;
}

Tridiagonal assemble(const RealFn& v, const Grid& grid, const SolverOptions& options) {
  if (grid.geometry() == Geometry::line) return assemble_line(v, grid);
  const double s = options.origin_exponent ? *options.origin_exponent
                                           : estimate_origin_exponent(v, grid);
  if (!(s > 0.0)) throw Error(Errc::invalid_argument, "radial origin exponent must be > 0");
  return assemble_radial(v, grid, s);
}

// Number of eigenvalues below x (Sturm sequence of the LDL^T pivots).
std::size_t below(const Tridiagonal& t, double x) {
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = t.d[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == t.d.size()) break;
    q = t.d[i + 1] - x - t.e[i] * t.e[i] / q;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int k) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < t.d.size(); ++i) {
    const double radius = (i > 0 ? std::fabs(t.e[i - 1]) : 0.0) +
                          (i + 1 < t.d.size() ? std::fabs(t.e[i]) : 0.0);
    lo = std::min(lo, t.d[i] - radius);
    hi = std::max(hi, t.d[i] + radius);
  }
  std::vector<double> out;
  double left = lo;
  for (int j = 0; j < k; ++j) {
    double a = left;
    double b = hi;
    for (int it = 0; it < 200 && b - a > 4e-16 * std::max(1.0, std::fabs(a) + std::fabs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      if (below(t, mid) > static_cast<std::size_t>(j)) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out.push_back(0.5 * (a + b));
    left = a;
  }
  return out;
}

// Partial-pivoting LU of (T - mu I) and solve, after LAPACK dgttrf/dgtts2.
class ShiftedSolver {
 public:
  ShiftedSolver(const Tridiagonal& t, double mu) : n_(t.d.size()) {
    dl_ = t.e;
    du_ = t.e;
    du2_.assign(n_ > 2 ? n_ - 2 : 0, 0.0);
    d_.resize(n_);
    piv_.assign(n_, false);
    for (std::size_t i = 0; i < n_; ++i) d_[i] = t.d[i] - mu;
    const double tiny = 1e-300;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::fabs(d_[i]) >= std::fabs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double f = dl_[i] / d_[i];
        dl_[i] = f;
        d_[i + 1] -= f * du_[i];
      } else {
        const double f = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = f;
        const double tmp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = tmp - f * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -f * du_[i + 1];
        }
        piv_[i] = true;
      }
    }
    if (d_[n_ - 1] == 0.0) d_[n_ - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (!piv_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double tmp = b[i] - dl_[i] * b[i + 1];
        b[i] = b[i + 1];
        b[i + 1] = tmp;
      }
    }
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
    for (std::size_t i = n_ - 2; i-- > 0;) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> piv_;
};

std::vector<double> eigenvector(const Tridiagonal& t, double lambda, double step) {
  const ShiftedSolver solver(t, lambda);
  std::vector<double> y(t.d.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 1.0 + 0.1 * std::sin(0.37 * static_cast<double>(i));
  auto scale_to_peak = [](std::vector<double>& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::fabs(v));
    for (double& v : f) v /= m;
  };
  for (int it = 0; it < 4; ++it) {
    solver.solve(y);
    scale_to_peak(y);
  }
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= t.to_psi[i];
  scale_to_peak(y);
  // Sign convention: first significant lobe positive.
  double sign = 1.0;
  for (double v : y) {
    if (std::fabs(v) > 1e-3) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  long double norm = 0.0L;
  for (double v : y) norm += static_cast<long double>(v) * v;
  const double scale = sign / std::sqrt(static_cast<double>(norm) * step);
  for (double& v : y) v *= scale;
  return y;
}

int count_nodes(const std::vector<double>& psi) {
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::fabs(v));
  const double floor = 1e-8 * peak;
  int nodes = 0;
  double last = 0.0;
  for (double v : psi) {
    if (std::fabs(v) < floor) continue;
    if (last != 0.0 && std::signbit(v) != std::signbit(last)) ++nodes;
    last = v;
  }
  return nodes;
}

void check_confined(const RealFn& v, const Grid& grid, const std::vector<double>& energies) {
  double wall = v(grid.hi());
  if (grid.geometry() == Geometry::line) wall = std::min(wall, v(grid.lo()));
  for (std::size_t n = 0; n < energies.size(); ++n) {
    if (!(energies[n] < wall)) {
      std::ostringstream msg;
      msg << "state " << n << " at E = " << energies[n] << " is not confined (V at boundary = "
          << wall << ")";
      throw Error(Errc::confinement, msg.str());
    }
  }
}

}  // namespace

double estimate_origin_exponent(const RealFn& v, const Grid& grid) {
  const double r1 = grid.lo() + grid.step();
  const double r2 = grid.lo() + 2.0 * grid.step();
  const double lambda = 2.0 * (v(r1) - v(r2)) / (1.0 / (r1 * r1) - 1.0 / (r2 * r2));
  const double disc = 0.25 + lambda;
  if (disc < -1e-9) {
    std::ostringstream msg;
    msg << "centrifugal strength " << lambda << " < -1/4: no regular origin behaviour";
    throw Error(Errc::domain, msg.str());
  }
  return 0.5 + std::sqrt(std::max(disc, 0.0));
}

std::vector<double> discrete_eigenvalues(const RealFn& v, const Grid& grid, int n_states,
                                         const SolverOptions& options) {
  if (n_states < 1) throw Error(Errc::invalid_argument, "n_states must be >= 1");
  const Tridiagonal t = assemble(v, grid, options);
  return lowest_eigenvalues(t, n_states);
}

Spectrum solve_bound_states(const RealFn& v, const Grid& grid, int n_states,
                            const SolverOptions& options) {
  if (n_states < 1) throw Error(Errc::invalid_argument, "n_states must be >= 1");
  SolverOptions opts = options;
  if (grid.geometry() == Geometry::radial && !opts.origin_exponent) {
    opts.origin_exponent = estimate_origin_exponent(v, grid);
  }
  const Tridiagonal t = assemble(v, grid, opts);
  const std::vector<double> coarse = lowest_eigenvalues(t, n_states);

  Spectrum s;
  s.x = t.x;
  s.step = grid.step();
  s.energies = coarse;
  check_confined(v, grid, coarse);
  if (opts.richardson) {
    const std::vector<double> fine = discrete_eigenvalues(v, grid.refined(), n_states, opts);
    for (int n = 0; n < n_states; ++n) {
      const double extrapolated = (4.0 * fine[n] - coarse[n]) / 3.0;
      if (std::fabs(extrapolated - fine[n]) > opts.richardson_tolerance) {
        std::ostringstream msg;
        msg << "level " << n << ": Richardson correction " << extrapolated - fine[n]
            << " exceeds " << opts.richardson_tolerance;
        throw Error(Errc::discretization, msg.str());
      }
      s.energies[n] = extrapolated;
    }
  }
  check_confined(v, grid, s.energies);
  for (int n = 0; n < n_states; ++n) {
    s.wavefunctions.push_back(eigenvector(t, coarse[n], grid.step()));
    s.node_counts.push_back(count_nodes(s.wavefunctions.back()));
  }
  return s;
}

double hamiltonian_residual(const RealFn& v, const std::vector<double>& x,
                            const std::vector<double>& psi, double energy) {
  const std::size_t n = x.size();
  if (n < 5 || psi.size() != n) throw Error(Errc::invalid_argument, "residual needs >= 5 points");
  const double h = x[1] - x[0];
  long double res = 0.0L, norm = 0.0L;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double lap = (-psi[i + 2] + 16.0 * psi[i + 1] - 30.0 * psi[i] + 16.0 * psi[i - 1] -
                        psi[i - 2]) / (12.0 * h * h);
    const double r = -0.5 * lap + (v(x[i]) - energy) * psi[i];
    res += static_cast<long double>(r) * r;
    norm += static_cast<long double>(psi[i]) * psi[i];
  }
  return static_cast<double>(std::sqrt(res / norm));
}

SpectrumComparison compare_spectra(const Spectrum& s1, const Spectrum& s2,
                                   const TransformKind& kind, double epsilon, double tol) {
  std::vector<double> expected;
  switch (kind.action) {
    case SpectralAction::delete_ground:
      if (!s1.energies.empty()) expected.assign(s1.energies.begin() + 1, s1.energies.end());
      break;
    case SpectralAction::add_ground:
    case SpectralAction::add_ground_line:
      expected = s1.energies;
      expected.push_back(epsilon);
      std::sort(expected.begin(), expected.end());
      break;
    case SpectralAction::none:
      expected = s1.energies;
      break;
  }
  SpectrumComparison out;
  const std::size_t count = std::min(expected.size(), s2.energies.size());
  out.pass = count > 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dev = s2.energies[i] - expected[i];
    const bool ok = std::fabs(dev) <= tol;
    out.levels.push_back({static_cast<int>(i), expected[i], s2.energies[i], dev, ok});
    out.pass = out.pass && ok;
  }
  std::ostringstream msg;
  msg << kind.name() << ": " << count << " level(s) compared at tol " << tol
      << (out.pass ? ", all matched" : ", mismatch");
  out.message = msg.str();
  return out;
}

}  // namespace cesforge
